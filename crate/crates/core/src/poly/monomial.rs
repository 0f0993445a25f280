use std::cmp::Ordering;

use super::ring::MonomialOrder;

/// Exponent vector; entries may be negative for invertible variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponent difference (no divisibility check).
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial order, optionally an elimination order where the first `elim`
/// variables form a block compared before the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: MonomialOrder,
    pub elim: usize,
}

impl TermOrder {
    pub fn new(kind: MonomialOrder) -> Self {
        TermOrder { kind, elim: 0 }
    }

    pub fn elimination(kind: MonomialOrder, elim: usize) -> Self {
        TermOrder { kind, elim }
    }

    pub fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        if self.elim > 0 {
            let k = self.elim.min(a.len());
            let c = cmp_kind(self.kind, &a[..k], &b[..k]);
            if c != Ordering::Equal {
                return c;
            }
            return cmp_kind(self.kind, &a[k..], &b[k..]);
        }
        cmp_kind(self.kind, a, b)
    }
}

fn cmp_kind(kind: MonomialOrder, a: &[i32], b: &[i32]) -> Ordering {
    match kind {
        MonomialOrder::Lex => {
            for (x, y) in a.iter().zip(b) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
        MonomialOrder::DegRevLex => {
            let da: i64 = a.iter().map(|&e| e as i64).sum();
            let db: i64 = b.iter().map(|&e| e as i64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for (x, y) in a.iter().zip(b).rev() {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::new(MonomialOrder::DegRevLex);
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = TermOrder::elimination(MonomialOrder::DegRevLex, 1);
        assert_eq!(o.cmp(&[1, 0], &[0, 9]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial(vec![1, 2]);
        let b = Monomial(vec![2, 1]);
        assert_eq!(a.lcm(&b), Monomial(vec![2, 2]));
        assert!(!a.divides(&b));
        assert!(a.divides(&a.lcm(&b)));
        assert!(!a.coprime(&b));
    }
}
