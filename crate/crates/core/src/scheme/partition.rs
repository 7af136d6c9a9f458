use crate::galois_ring::{ElementSet, GaloisRing, RingElem};

use super::SchemeError;

/// A partition S₀ = {0}, S₁, …, S_d of the ring, with the involution i ↦ i′ given by −S_i = S_{i′}.
///
/// The relations of the translation scheme are R_j = {(α, β) : α − β ∈ S_j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferencePartition {
    classes: Vec<ElementSet>,
    pairing: Vec<usize>,
    class_of: Vec<u8>,
}

impl DifferencePartition {
    /// The seven classes
    ///
    /// ```text
    /// S0 = {0}          S1 = (T∖{1})H     S2 = (T∖{1})(−H)
    /// S3 = H            S4 = −H           S5 = P0∖{0}        S6 = P∖P0
    /// ```
    pub fn class6(ring: &GaloisRing) -> Self {
        let n = ring.n();
        let s = ring.subsets();
        let zero = ElementSet::from_elements(n, [ring.zero()]);
        let mut t_star = s.t.clone();
        t_star.remove(ring.one());
        let neg_h = ring.negate_set(&s.h);
        let s1 = ring.product_set(&t_star, &s.h);
        let s2 = ring.product_set(&t_star, &neg_h);
        let classes = vec![
            zero.clone(),
            s1,
            s2,
            s.h.clone(),
            neg_h,
            s.p0.difference(&zero),
            s.p.difference(&s.p0),
        ];
        DifferencePartition::from_classes(ring, classes)
            .expect("the class-6 sets partition the ring and are closed under negation")
    }

    /// Validates that `classes` partition the ring with `classes[0] = {0}` and that negation
    /// permutes the classes.
    pub fn from_classes(ring: &GaloisRing, classes: Vec<ElementSet>) -> Result<Self, SchemeError> {
        let n = ring.n();
        if classes.is_empty() || classes.len() > u8::MAX as usize {
            return Err(SchemeError::NotAPartition(format!(
                "{} classes given",
                classes.len()
            )));
        }
        if classes[0] != ElementSet::from_elements(n, [ring.zero()]) {
            return Err(SchemeError::NotAPartition("class 0 must be {0}".into()));
        }
        let mut class_of = vec![u8::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            if c.universe() != n {
                return Err(SchemeError::NotAPartition(format!(
                    "class {i} lives in a universe of size {}",
                    c.universe()
                )));
            }
            if c.is_empty() {
                return Err(SchemeError::NotAPartition(format!("class {i} is empty")));
            }
            for x in c.iter() {
                if class_of[x.index()] != u8::MAX {
                    return Err(SchemeError::NotAPartition(format!(
                        "element {:#x} lies in classes {} and {i}",
                        x.0,
                        class_of[x.index()]
                    )));
                }
                class_of[x.index()] = i as u8;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == u8::MAX) {
            return Err(SchemeError::NotAPartition(format!(
                "element {x:#x} is in no class"
            )));
        }
        let mut pairing = Vec::with_capacity(classes.len());
        for (i, c) in classes.iter().enumerate() {
            let neg = ring.negate_set(c);
            let first = neg.iter().next().expect("nonempty");
            let j = class_of[first.index()] as usize;
            if neg != classes[j] {
                return Err(SchemeError::NotClosedUnderNegation(i));
            }
            pairing.push(j);
        }
        Ok(DifferencePartition {
            classes,
            pairing,
            class_of,
        })
    }

    /// Unions the classes along `blocks` (each a list of class indices; block 0 must be `[0]`).
    pub fn fuse(&self, ring: &GaloisRing, blocks: &[Vec<usize>]) -> Result<Self, SchemeError> {
        let n = ring.n();
        let classes = blocks
            .iter()
            .map(|b| {
                b.iter().try_fold(ElementSet::new(n), |acc, &i| {
                    self.classes
                        .get(i)
                        .map(|c| acc.union(c))
                        .ok_or_else(|| SchemeError::NotAPartition(format!("no class {i}")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        DifferencePartition::from_classes(ring, classes)
    }

    /// d, the number of non-trivial classes.
    pub fn class_count(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ElementSet {
        &self.classes[i]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn class_of(&self, x: RingElem) -> usize {
        self.class_of[x.index()] as usize
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ElementSet::len).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairing.iter().enumerate().all(|(i, &j)| i == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class6_sizes_and_pairing() {
        let r = GaloisRing::new(3, None).unwrap();
        let p = DifferencePartition::class6(&r);
        assert_eq!(p.sizes(), vec![1, 24, 24, 4, 4, 3, 4]);
        assert_eq!(p.pairing(), &[0, 2, 1, 4, 3, 5, 6]);
        assert_eq!(r.negate_set(p.class(1)), *p.class(2));
        assert!(!p.is_symmetric());
        let r5 = GaloisRing::new(5, None).unwrap();
        let p5 = DifferencePartition::class6(&r5);
        let b5 = r5.b() as usize;
        assert_eq!(
            p5.sizes(),
            vec![1, 2 * b5 * (b5 - 1), 2 * b5 * (b5 - 1), b5, b5, b5 - 1, b5]
        );
    }

    #[test]
    fn classes_partition_the_ring() {
        let r = GaloisRing::new(3, None).unwrap();
        let p = DifferencePartition::class6(&r);
        let mut all = ElementSet::new(r.n());
        for (i, c) in p.classes().iter().enumerate() {
            assert!(all.is_disjoint(c), "class {i} overlaps");
            all = all.union(c);
        }
        assert_eq!(all.len(), r.n());
    }

    #[test]
    fn invalid_partitions_rejected() {
        let r = GaloisRing::new(3, None).unwrap();
        let p = DifferencePartition::class6(&r);
        let mut classes = p.classes().to_vec();
        let x = classes[5].iter().next().unwrap();
        classes[6].insert(x);
        assert!(matches!(
            DifferencePartition::from_classes(&r, classes),
            Err(SchemeError::NotAPartition(_))
        ));
        // moving an element of S1 into S3 breaks −S1 = S2
        let mut classes = p.classes().to_vec();
        let y = classes[1].iter().next().unwrap();
        classes[1].remove(y);
        classes[3].insert(y);
        assert!(matches!(
            DifferencePartition::from_classes(&r, classes),
            Err(SchemeError::NotClosedUnderNegation(_))
        ));
    }

    #[test]
    fn fusing_unions_classes() {
        let r = GaloisRing::new(3, None).unwrap();
        let p = DifferencePartition::class6(&r);
        let f = p
            .fuse(&r, &[vec![0], vec![1, 3], vec![2, 4], vec![5, 6]])
            .unwrap();
        assert_eq!(f.sizes(), vec![1, 28, 28, 7]);
        assert_eq!(f.pairing(), &[0, 2, 1, 3]);
    }
}
