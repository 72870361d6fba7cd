/// An exceptional divisor: its label and the chart variable defining it, or
/// `None` when its strict transform misses the current chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    pub label: String,
    pub var: Option<usize>,
}

/// Affine coordinate chart with its divisor registry. Labels `H1, H2, …` are
/// handed out in creation order and never reused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
    divisors: Vec<Divisor>,
}

impl Chart {
    pub fn new(names: Vec<String>) -> Self {
        Chart { names, divisors: Vec::new() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn divisor(&self, label: &str) -> Option<&Divisor> {
        self.divisors.iter().find(|d| d.label == label)
    }

    /// Divisors meeting this chart.
    pub fn present(&self) -> impl Iterator<Item = &Divisor> {
        self.divisors.iter().filter(|d| d.var.is_some())
    }

    pub fn var_of(&self, label: &str) -> Option<usize> {
        self.divisor(label).and_then(|d| d.var)
    }

    pub fn label_of_var(&self, var: usize) -> Option<&str> {
        self.divisors.iter().find(|d| d.var == Some(var)).map(|d| d.label.as_str())
    }

    /// Registry update for the blowup of `V(center)` seen in the `w`-chart:
    /// a divisor on `w` loses this chart, the others keep their variables, and
    /// the exceptional divisor is `w = 0`. Returns the new label.
    pub fn register_blowup(&mut self, center: &[usize], w: usize) -> String {
        debug_assert!(center.contains(&w));
        for d in &mut self.divisors {
            if d.var == Some(w) {
                d.var = None;
            }
        }
        let label = format!("H{}", self.divisors.len() + 1);
        self.divisors.push(Divisor { label: label.clone(), var: Some(w) });
        label
    }

    /// A divisor whose center misses this chart entirely: it gets a label,
    /// so numbering stays aligned with sibling charts, but no variable.
    pub fn register_absent(&mut self) -> String {
        let label = format!("H{}", self.divisors.len() + 1);
        self.divisors.push(Divisor { label: label.clone(), var: None });
        label
    }

    /// Append a variable (e.g. the affine line adjoined by an experiment).
    pub fn with_extra_var(&self, name: &str) -> Chart {
        let mut c = self.clone();
        c.names.push(name.to_string());
        c
    }
}
