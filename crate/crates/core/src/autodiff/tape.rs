use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::Real;

#[derive(Clone, Copy)]
struct Node {
    parents: [u32; 2],
    partials: [f64; 2],
}

/// Append-only record of a computation for reverse-mode differentiation.
///
/// Every arithmetic operation on [`Var`]s pushes one node holding the
/// indices of its operands and the local partial derivatives; a single
/// backward sweep over the nodes then yields the gradient of any recorded
/// scalar with respect to every leaf.
#[derive(Default)]
pub struct Tape {
    nodes: RefCell<Vec<Node>>,
}

/// A scalar recorded on a [`Tape`]. Cheap to copy; the tape owns the graph.
#[derive(Clone, Copy)]
pub struct Var<'t> {
    tape: &'t Tape,
    index: u32,
    pub v: f64,
}

impl Tape {
    pub fn new() -> Self {
        Tape::default()
    }

    /// Record a leaf variable. Leaves point at themselves with zero
    /// partials, which makes the backward sweep skip them naturally.
    pub fn var(&self, v: f64) -> Var<'_> {
        let mut nodes = self.nodes.borrow_mut();
        let index = u32::try_from(nodes.len()).expect("tape overflow");
        nodes.push(Node {
            parents: [index, index],
            partials: [0.0, 0.0],
        });
        Var {
            tape: self,
            index,
            v,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.borrow().is_empty()
    }

    fn push_binary(&self, a: &Var<'_>, b: &Var<'_>, da: f64, db: f64, v: f64) -> Var<'_> {
        debug_assert!(std::ptr::eq(a.tape, self) && std::ptr::eq(b.tape, self));
        let mut nodes = self.nodes.borrow_mut();
        let index = u32::try_from(nodes.len()).expect("tape overflow");
        nodes.push(Node {
            parents: [a.index, b.index],
            partials: [da, db],
        });
        Var {
            tape: self,
            index,
            v,
        }
    }

    fn push_unary(&self, a: &Var<'_>, da: f64, v: f64) -> Var<'_> {
        let mut nodes = self.nodes.borrow_mut();
        let index = u32::try_from(nodes.len()).expect("tape overflow");
        nodes.push(Node {
            parents: [a.index, a.index],
            partials: [da, 0.0],
        });
        Var {
            tape: self,
            index,
            v,
        }
    }
}

/// Gradient of `output` with respect to each variable in `wrt`, by one
/// reverse sweep over the tape that recorded them.
pub fn gradient(output: Var<'_>, wrt: &[Var<'_>]) -> Vec<f64> {
    let nodes = output.tape.nodes.borrow();
    let mut adjoint = vec![0.0; nodes.len()];
    adjoint[output.index as usize] = 1.0;
    for i in (0..nodes.len()).rev() {
        let a = adjoint[i];
        if a == 0.0 {
            continue;
        }
        let node = &nodes[i];
        for k in 0..2 {
            let p = node.parents[k] as usize;
            if p != i {
                adjoint[p] += node.partials[k] * a;
            }
        }
    }
    wrt.iter().map(|w| adjoint[w.index as usize]).collect()
}

impl<'t> Add for Var<'t> {
    type Output = Var<'t>;

    fn add(self, rhs: Self) -> Var<'t> {
        self.tape.push_binary(&self, &rhs, 1.0, 1.0, self.v + rhs.v)
    }
}

impl<'t> Sub for Var<'t> {
    type Output = Var<'t>;

    fn sub(self, rhs: Self) -> Var<'t> {
        self.tape
            .push_binary(&self, &rhs, 1.0, -1.0, self.v - rhs.v)
    }
}

impl<'t> Mul for Var<'t> {
    type Output = Var<'t>;

    fn mul(self, rhs: Self) -> Var<'t> {
        self.tape
            .push_binary(&self, &rhs, rhs.v, self.v, self.v * rhs.v)
    }
}

impl<'t> Div for Var<'t> {
    type Output = Var<'t>;

    fn div(self, rhs: Self) -> Var<'t> {
        let q = self.v / rhs.v;
        self.tape
            .push_binary(&self, &rhs, 1.0 / rhs.v, -q / rhs.v, q)
    }
}

impl<'t> Neg for Var<'t> {
    type Output = Var<'t>;

    fn neg(self) -> Var<'t> {
        self.tape.push_unary(&self, -1.0, -self.v)
    }
}

impl<'t> Real for Var<'t> {
    fn lift(&self, v: f64) -> Self {
        self.tape.var(v)
    }

    fn value(&self) -> f64 {
        self.v
    }

    fn tanh(self) -> Self {
        let t = self.v.tanh();
        self.tape.push_unary(&self, 1.0 - t * t, t)
    }

    fn exp(self) -> Self {
        let e = self.v.exp();
        self.tape.push_unary(&self, e, e)
    }

    fn sin(self) -> Self {
        self.tape.push_unary(&self, self.v.cos(), self.v.sin())
    }

    fn cos(self) -> Self {
        self.tape.push_unary(&self, -self.v.sin(), self.v.cos())
    }
}
