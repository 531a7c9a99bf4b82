//! Named G-groups used by the audit suites.

use std::sync::Arc;

use gscheme_core::{GGroup, GroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Small,
    Large,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::Small => "small",
            Scope::Large => "large",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    /// Selector reproducing this entry on the command line.
    pub selector: String,
    pub obj: GGroup,
}

fn ident(name: &str, expr: &str, h: GroupTable) -> Entry {
    Entry { name: name.into(), selector: format!("--G '{expr}'"), obj: GGroup::identity(Arc::new(h)) }
}

/// A single group with identity structure, as selected by `--G`.
pub fn custom(expr: &str, h: GroupTable) -> Entry {
    ident(expr, expr, h)
}

pub fn small() -> Vec<Entry> {
    let c2 = GroupTable::cyclic(2);
    vec![
        ident("Z/2", "cyclic(2)", c2.clone()),
        ident("Z/3", "cyclic(3)", GroupTable::cyclic(3)),
        ident("Z/4", "cyclic(4)", GroupTable::cyclic(4)),
        ident("Z/2xZ/2", "product(cyclic(2),cyclic(2))", GroupTable::direct_product(&c2, &c2)),
        ident("S3", "sym(3)", GroupTable::symmetric(3)),
        ident("D4", "dihedral(4)", GroupTable::dihedral(4)),
        ident("Q8", "quaternion8", GroupTable::quaternion8()),
        ident("A4", "alt(4)", GroupTable::alternating(4)),
        ident("S4", "sym(4)", GroupTable::symmetric(4)),
    ]
}

/// `Z/2` acting on `S5` through the transposition `(1 2)`.
pub fn z2_in_s5() -> GGroup {
    let s5 = Arc::new(GroupTable::symmetric(5));
    let t = s5.elements().find(|&e| s5.label(e) == "(1 2)").expect("S5 contains (1 2)");
    GGroup::new(Arc::new(GroupTable::cyclic(2)), s5.clone(), vec![s5.identity(), t]).expect("order-2 image")
}

pub fn large() -> Vec<Entry> {
    let a5 = GroupTable::alternating(5);
    let mut out = small();
    out.push(ident("A5", "alt(5)", a5.clone()));
    out.push(ident("S5", "sym(5)", GroupTable::symmetric(5)));
    out.push(ident("A5xA5", "product(alt(5),alt(5))", GroupTable::direct_product(&a5, &a5)));
    out.push(Entry { name: "Z/2->S5".into(), selector: "--catalog large".into(), obj: z2_in_s5() });
    out
}

pub fn entries(scope: Scope) -> Vec<Entry> {
    match scope {
        Scope::Small => small(),
        Scope::Large => large(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> = large().iter().map(|e| e.obj.carrier().order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 4, 6, 8, 8, 12, 24, 60, 120, 3600, 120]);
    }

    #[test]
    fn transposition_structure() {
        let obj = z2_in_s5();
        assert_eq!(obj.carrier().element_order(obj.act(1)), 2);
    }
}
