use crate::cnf::Var;

const RESCALE_LIMIT: f64 = 1e100;
const NOT_IN_HEAP: usize = usize::MAX;

/// VSIDS activities with a binary max-heap over the candidate variables.
/// Ties go to the lower variable index.
#[derive(Debug, Clone)]
pub struct VarOrder {
    activity: Vec<f64>,
    heap: Vec<Var>,
    positions: Vec<usize>,
    increment: f64,
    decay: f64,
}

impl VarOrder {
    /// All variables start in the heap with activity 0.
    pub fn new(num_vars: usize, decay: f64) -> VarOrder {
        VarOrder {
            activity: vec![0.0; num_vars],
            heap: (0..num_vars as u32).map(Var::new).collect(),
            positions: (0..num_vars).collect(),
            increment: 1.0,
            decay,
        }
    }

    pub fn activity(&self, var: Var) -> f64 {
        self.activity[var.index()]
    }

    pub fn increment(&self) -> f64 {
        self.increment
    }

    pub fn contains(&self, var: Var) -> bool {
        self.positions[var.index()] != NOT_IN_HEAP
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn insert(&mut self, var: Var) {
        if self.contains(var) {
            return;
        }
        self.positions[var.index()] = self.heap.len();
        self.heap.push(var);
        self.sift_up(self.heap.len() - 1);
    }

    /// Removes and returns the variable of highest activity.
    pub fn pop(&mut self) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.positions[top.index()] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.positions[last.index()] = 0;
            self.sift_down(0);
        }
        Some(top)
    }

    /// Heap contents in storage order.
    pub fn candidates(&self) -> &[Var] {
        &self.heap
    }

    /// Bumps every variable in `vars` once by the current increment, then
    /// grows the increment by `1 / decay`.
    pub fn bump_and_decay(&mut self, vars: &[Var]) {
        for &var in vars {
            self.bump(var);
        }
        self.increment /= self.decay;
    }

    fn bump(&mut self, var: Var) {
        let a = &mut self.activity[var.index()];
        *a += self.increment;
        if *a > RESCALE_LIMIT {
            self.rescale();
        }
        let pos = self.positions[var.index()];
        if pos != NOT_IN_HEAP {
            self.sift_up(pos);
        }
    }

    pub(crate) fn rescale(&mut self) {
        for a in &mut self.activity {
            *a *= 1.0 / RESCALE_LIMIT;
        }
        self.increment *= 1.0 / RESCALE_LIMIT;
    }

    #[inline]
    fn better(&self, a: Var, b: Var) -> bool {
        let (x, y) = (self.activity[a.index()], self.activity[b.index()]);
        x > y || (x == y && a < b)
    }

    fn sift_up(&mut self, mut pos: usize) {
        let var = self.heap[pos];
        while pos > 0 {
            let parent = (pos - 1) / 2;
            if !self.better(var, self.heap[parent]) {
                break;
            }
            self.heap[pos] = self.heap[parent];
            self.positions[self.heap[pos].index()] = pos;
            pos = parent;
        }
        self.heap[pos] = var;
        self.positions[var.index()] = pos;
    }

    fn sift_down(&mut self, mut pos: usize) {
        let var = self.heap[pos];
        loop {
            let left = 2 * pos + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.heap.len() && self.better(self.heap[right], self.heap[left])
            {
                right
            } else {
                left
            };
            if !self.better(self.heap[child], var) {
                break;
            }
            self.heap[pos] = self.heap[child];
            self.positions[self.heap[pos].index()] = pos;
            pos = child;
        }
        self.heap[pos] = var;
        self.positions[var.index()] = pos;
    }
}
