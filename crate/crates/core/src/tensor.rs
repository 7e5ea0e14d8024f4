//! The non-abelian tensor product of two groups acting compatibly on each
//! other, realised by coset enumeration of its defining presentation.
//!
//! There is one generator `g (x) h` per pair, numbered `g * |H| + h + 1`,
//! and two relator families:
//!
//! ```text
//! (g g1) (x) h  = (g^g1 (x) h^g1) (g1 (x) h)       over (g, g1, h)
//! g (x) (h h1)  = (g (x) h1) (g^h1 (x) h^h1)       over (g, h, h1)
//! ```

use alloc::vec::Vec;

use crate::abelian::{abelian_invariants, AbelianInvariants};
use crate::action::{is_compatible, MutualAction, SelfConjugation};
use crate::error::Error;
use crate::fp::{coset_enumerate, table_to_group, EnumLimits, Presentation};
use crate::group::FiniteGroup;
use crate::hom::{hom_from_images, GroupHom};
use crate::subgroup::{nilpotency_class, subgroup_generated, Subgroup};
use crate::Result;

pub use crate::abelian::abelian_tensor;

/// Largest `|G| * |H|` attempted by default.
pub const DEFAULT_MAX_SYMBOLS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorOptions {
    pub limits: EnumLimits,
    pub max_symbols: usize,
    /// Build the presentation even when the actions are not compatible.
    pub force: bool,
}

impl Default for TensorOptions {
    fn default() -> Self {
        TensorOptions { limits: EnumLimits::default(), max_symbols: DEFAULT_MAX_SYMBOLS, force: false }
    }
}

/// Generator number of the symbol `g (x) h`.
#[inline]
pub fn symbol_generator(g: usize, h: usize, h_order: usize) -> i32 {
    (g * h_order + h + 1) as i32
}

/// The defining presentation. Refuses incompatible actions.
pub fn tensor_presentation<A: MutualAction + ?Sized>(a: &A) -> Result<Presentation> {
    let report = is_compatible(a);
    if let Some(w) = report.witness {
        return Err(Error::IncompatibleActions(w));
    }
    Ok(tensor_presentation_unchecked(a))
}

/// The defining presentation without the compatibility check.
pub fn tensor_presentation_unchecked<A: MutualAction + ?Sized>(a: &A) -> Presentation {
    let (gg, hh) = (a.g(), a.h());
    let nh = hh.order();
    let sym = |g: usize, h: usize| symbol_generator(g, h, nh);
    let mut relators = Vec::with_capacity(2 * gg.order() * nh * (gg.order() + nh));
    for g in gg.elements() {
        for g1 in gg.elements() {
            let gc = gg.conj(g, g1);
            for h in hh.elements() {
                relators.push(alloc::vec![sym(gc, a.act_on_h(h, g1)), sym(g1, h), -sym(gg.mul(g, g1), h)]);
            }
        }
    }
    for g in gg.elements() {
        for h in hh.elements() {
            for h1 in hh.elements() {
                relators.push(alloc::vec![
                    sym(g, h1),
                    sym(a.act_on_g(g, h1), hh.conj(h, h1)),
                    -sym(g, hh.mul(h, h1))
                ]);
            }
        }
    }
    Presentation::new(gg.order() * nh, relators).expect("symbol generators in range")
}

/// `D_H(G)`: the subgroup of `G` generated by every `g^-1 g^h`.
pub fn derivative_subgroup<A: MutualAction + ?Sized>(a: &A) -> Subgroup {
    let g = a.g();
    let gens: Vec<usize> = g
        .elements()
        .flat_map(|x| a.h().elements().map(move |h| (x, h)))
        .map(|(x, h)| g.mul(g.inv(x), a.act_on_g(x, h)))
        .collect();
    subgroup_generated(g, &gens)
}

/// `D_G(H)`: the subgroup of `H` generated by every `h^-1 h^g`.
pub fn derivative_subgroup_of_h<A: MutualAction + ?Sized>(a: &A) -> Subgroup {
    let h = a.h();
    let gens: Vec<usize> = h
        .elements()
        .flat_map(|y| a.g().elements().map(move |g| (y, g)))
        .map(|(y, g)| h.mul(h.inv(y), a.act_on_h(y, g)))
        .collect();
    subgroup_generated(h, &gens)
}

#[derive(Debug, Clone)]
pub struct TensorReport {
    pub tensor: FiniteGroup,
    /// `symbols[g * |H| + h]` is the element `g (x) h`.
    pub symbols: Vec<usize>,
    pub h_order: usize,
    /// `g (x) h -> g^-1 g^h`. `None` when this does not extend to a
    /// homomorphism, which only happens for actions that are not
    /// homomorphisms or (under `force`) not compatible.
    pub kappa: Option<GroupHom>,
    pub derivative: Subgroup,
    /// `ker kappa`, present with `kappa`.
    pub kernel: Option<Subgroup>,
    pub invariants: Option<AbelianInvariants>,
    pub class: Option<usize>,
    pub relators: usize,
    /// Built without a compatibility check.
    pub forced: bool,
}

impl TensorReport {
    /// The element `g (x) h`.
    pub fn symbol(&self, g: usize, h: usize) -> usize {
        self.symbols[g * self.h_order + h]
    }

    pub fn order(&self) -> usize {
        self.tensor.order()
    }
}

pub fn compute_tensor<A: MutualAction + ?Sized>(a: &A) -> Result<TensorReport> {
    compute_tensor_with(a, TensorOptions::default())
}

pub fn compute_tensor_with<A: MutualAction + ?Sized>(a: &A, opts: TensorOptions) -> Result<TensorReport> {
    let symbols = a.g().order() * a.h().order();
    if symbols > opts.max_symbols {
        return Err(Error::BudgetExceeded { what: "tensor symbols", limit: opts.max_symbols as u64 });
    }
    let p = if opts.force { tensor_presentation_unchecked(a) } else { tensor_presentation(a)? };
    let table = coset_enumerate(&p, opts.limits)?;
    let (tensor, images) = table_to_group(&table, &p)?;
    let report = assemble(a, &p, tensor, images, opts.force)?;
    Ok(report)
}

fn assemble<A: MutualAction + ?Sized>(
    a: &A,
    p: &Presentation,
    tensor: FiniteGroup,
    symbols: Vec<usize>,
    forced: bool,
) -> Result<TensorReport> {
    let g = a.g();
    let nh = a.h().order();
    let kappa_images: Vec<usize> = (0..symbols.len())
        .map(|s| {
            let (x, h) = (s / nh, s % nh);
            g.mul(g.inv(x), a.act_on_g(x, h))
        })
        .collect();
    let derivative = derivative_subgroup(a);
    let trusted = !forced && a.is_homomorphic();
    let kappa = match hom_from_images(&tensor, g, &symbols, &kappa_images) {
        Ok(k) => Some(k),
        Err(_) if !trusted => None,
        Err(_) => return Err(Error::Internal("kappa does not extend to a homomorphism")),
    };
    let kernel = match &kappa {
        Some(k) => Some(Subgroup::from_members(&tensor, &k.kernel())?),
        None => None,
    };
    // Centrality and exactness are theorems about compatible homomorphic
    // actions; otherwise the report records whatever was found.
    if let (true, Some(kappa), Some(kernel)) = (trusted, &kappa, &kernel) {
        if !kernel.is_central() {
            return Err(Error::Internal("kernel of kappa is not central"));
        }
        if kappa.image() != derivative.members() {
            return Err(Error::Internal("image of kappa differs from the derivative subgroup"));
        }
        if kernel.order() * derivative.order() != tensor.order() {
            return Err(Error::Internal("kernel and image orders do not multiply to the tensor order"));
        }
    }
    let invariants = tensor.is_abelian().then(|| abelian_invariants(&tensor));
    let class = nilpotency_class(&tensor);
    let report = TensorReport {
        tensor,
        symbols,
        h_order: nh,
        kappa,
        derivative,
        kernel,
        invariants,
        class,
        relators: p.relators().len(),
        forced,
    };
    if !forced && relation_failure(a, &report).is_some() {
        return Err(Error::Internal("defining relation fails in the computed tensor"));
    }
    Ok(report)
}

/// First `(family, x, y, z)` whose defining relation does not hold between
/// the computed symbol elements, traced in the tensor's Cayley table.
/// Family 0 is indexed by `(g, g1, h)` and family 1 by `(g, h, h1)`.
pub fn relation_failure<A: MutualAction + ?Sized>(
    a: &A,
    report: &TensorReport,
) -> Option<(u8, usize, usize, usize)> {
    let (gg, hh, t) = (a.g(), a.h(), &report.tensor);
    let s = |g: usize, h: usize| report.symbol(g, h);
    for g in gg.elements() {
        for g1 in gg.elements() {
            for h in hh.elements() {
                let rhs = t.mul(s(gg.conj(g, g1), a.act_on_h(h, g1)), s(g1, h));
                if s(gg.mul(g, g1), h) != rhs {
                    return Some((0, g, g1, h));
                }
            }
        }
    }
    for g in gg.elements() {
        for h in hh.elements() {
            for h1 in hh.elements() {
                let rhs = t.mul(s(g, h1), s(a.act_on_g(g, h1), hh.conj(h, h1)));
                if s(g, hh.mul(h, h1)) != rhs {
                    return Some((1, g, h, h1));
                }
            }
        }
    }
    None
}

/// How `D_H(G)` acts on `A = ker kappa`: row `i` lists `x^-1 a x` for each
/// kernel element `a` (in kernel order), where `x` is any preimage of the
/// `i`-th derivative element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelAction {
    pub kernel: Vec<usize>,
    pub derivative: Vec<usize>,
    pub table: Vec<Vec<usize>>,
}

/// Builds the action and checks it does not depend on the preimage chosen.
pub fn module_action_on_kernel(report: &TensorReport) -> Result<KernelAction> {
    let t = &report.tensor;
    let (Some(kappa), Some(kernel)) = (&report.kappa, &report.kernel) else {
        return Err(Error::Malformed("report has no kappa".into()));
    };
    let kernel = kernel.members().to_vec();
    let derivative = report.derivative.members().to_vec();
    let mut table = Vec::with_capacity(derivative.len());
    for &d in &derivative {
        let mut row: Option<Vec<usize>> = None;
        for x in t.elements().filter(|&x| kappa.apply(x) == d) {
            let this: Vec<usize> = kernel.iter().map(|&k| t.conj(k, x)).collect();
            match &row {
                None => row = Some(this),
                Some(r) if *r != this => {
                    return Err(Error::Internal("kernel action depends on the preimage"))
                }
                Some(_) => {}
            }
        }
        table.push(row.ok_or(Error::Internal("derivative element without preimage"))?);
    }
    Ok(KernelAction { kernel, derivative, table })
}

/// `G (x) G` with both actions by conjugation.
pub fn tensor_square(g: &FiniteGroup, opts: TensorOptions) -> Result<TensorReport> {
    compute_tensor_with(&SelfConjugation::new(g), opts)
}
