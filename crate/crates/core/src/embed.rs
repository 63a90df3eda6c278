//! Subgroup embeddings and class fusion: locating each subgroup class inside
//! its parent's class partition, the bridge between a parent table and
//! restriction/induction multiplicities.

use crate::error::GroupError;
use crate::families::Family;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub struct SubgroupEmbedding {
    pub parent: FiniteGroup,
    pub sub: FiniteGroup,
    /// parent element index of each sub element (identity inclusion).
    pub parent_index: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn index(&self) -> usize {
        self.parent.order() / self.sub.order()
    }
}

/// Closes `sub_generators` inside `parent`. Every generator must already be
/// a parent element acting on the same points.
pub fn embed(parent: FiniteGroup, sub_generators: Vec<Permutation>) -> Result<SubgroupEmbedding, GroupError> {
    for g in &sub_generators {
        if !parent.contains(g) {
            return Err(GroupError::NotASubgroup(format!(
                "{} is not an element of {}",
                g, parent.name
            )));
        }
    }
    let name = format!("{}-sub", parent.name);
    let sub = FiniteGroup::build(name, parent.degree, sub_generators, parent.order())?;
    let parent_index = sub
        .elements()
        .iter()
        .map(|e| parent.index_of(e).expect("closure stays inside the parent"))
        .collect();
    Ok(SubgroupEmbedding {
        parent,
        sub,
        parent_index,
    })
}

/// H embedded in H x H as the diagonal {(h,h)} or as the first factor H x 1.
pub fn embed_in_square(h: &Family, diagonal: bool) -> Result<SubgroupEmbedding, GroupError> {
    let square = Family::Product(Box::new(h.clone()), Box::new(h.clone()));
    let parent = square.build()?;
    let sub_fam = if diagonal {
        Family::Diagonal(Box::new(h.clone()))
    } else {
        Family::Factor(Box::new(h.clone()))
    };
    let sub_name = sub_fam.to_string();
    let mut e = embed(parent, sub_fam.generators())?;
    e.sub.name = sub_name;
    Ok(e)
}

/// Parent/sub pair in descriptor syntax, e.g. `s:4/d:4` or
/// `prod(s:3,s:3)/diag(s:3)`. Sub generators of smaller degree are padded
/// with fixed points.
#[derive(Clone, Debug)]
pub struct SubgroupPair {
    pub parent: Family,
    pub sub: Family,
}

impl SubgroupPair {
    pub fn parse(s: &str) -> Result<SubgroupPair, GroupError> {
        let split = split_pair(s).ok_or_else(|| GroupError::InvalidFamily {
            descriptor: s.to_string(),
            reason: "expected parent/sub".to_string(),
        })?;
        Ok(SubgroupPair {
            parent: Family::parse(split.0)?,
            sub: Family::parse(split.1)?,
        })
    }

    pub fn build(&self) -> Result<SubgroupEmbedding, GroupError> {
        let parent = self.parent.build()?;
        if self.sub.degree() > parent.degree {
            return Err(GroupError::NotASubgroup(format!(
                "{} acts on more points than {}",
                self.sub, self.parent
            )));
        }
        let gens: Vec<Permutation> = self
            .sub
            .generators()
            .into_iter()
            .map(|g| g.pad(parent.degree))
            .collect();
        let sub_name = self.sub.to_string();
        let mut e = embed(parent, gens)?;
        e.sub.name = sub_name;
        Ok(e)
    }
}

impl std::fmt::Display for SubgroupPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.parent, self.sub)
    }
}

/// Splits at the top-level '/' (not inside parentheses).
fn split_pair(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Where each subgroup class lands in the parent's class partition.
#[derive(Clone, Debug)]
pub struct ClassFusion {
    pub parent_name: String,
    pub sub_name: String,
    pub parent_order: usize,
    pub sub_order: usize,
    /// fusion[i] = parent class index of sub class i.
    pub fusion: Vec<usize>,
    /// Centralizer orders per sub class, in the subgroup.
    pub z_sub: Vec<usize>,
    /// Centralizer orders of the fused classes, in the parent.
    pub z_parent: Vec<usize>,
}

pub fn class_fusion(e: &SubgroupEmbedding) -> ClassFusion {
    let fusion: Vec<usize> = e
        .sub
        .classes()
        .iter()
        .map(|c| {
            e.parent
                .class_index_of_element(e.parent_index[c.rep_index])
        })
        .collect();
    let z_sub = e.sub.centralizer_orders();
    let z_parent_all = e.parent.centralizer_orders();
    let z_parent = fusion.iter().map(|&f| z_parent_all[f]).collect();
    ClassFusion {
        parent_name: e.parent.name.clone(),
        sub_name: e.sub.name.clone(),
        parent_order: e.parent.order(),
        sub_order: e.sub.order(),
        fusion,
        z_sub,
        z_parent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    #[test]
    fn s2_inside_s3() {
        let parent = Family::parse("s:3").unwrap().build().unwrap();
        let t = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let e = embed(parent, vec![t]).unwrap();
        assert_eq!(e.index(), 3);
        let f = class_fusion(&e);
        // sub classes: identity, transposition; the latter fuses into the
        // parent transposition class (size 3, z = 2)
        assert_eq!(f.fusion[0], 0);
        assert_eq!(f.z_sub, vec![2, 2]);
        assert_eq!(f.z_parent[1], 2);
    }

    #[test]
    fn rejects_outsiders() {
        let parent = Family::parse("a:4").unwrap().build().unwrap();
        let t = Permutation::parse_cycles("(1 2)", 4).unwrap();
        assert!(matches!(
            embed(parent, vec![t]),
            Err(GroupError::NotASubgroup(_))
        ));
    }

    #[test]
    fn diagonal_and_factor_squares() {
        let h = Family::parse("s:3").unwrap();
        let d = embed_in_square(&h, true).unwrap();
        assert_eq!(d.parent.order(), 36);
        assert_eq!(d.sub.order(), 6);
        assert_eq!(d.index(), 6);
        let f = embed_in_square(&h, false).unwrap();
        assert_eq!(f.index(), 6);
        // diagonal fusion: class of (g,g) is the parent product class
        let fu = class_fusion(&d);
        assert_eq!(fu.fusion.len(), 3);
        // whole-group embedding sanity: H = G is a bijective fusion
        let g = Family::parse("s:3").unwrap().build().unwrap();
        let gens = g.generators.clone();
        let full = embed(g, gens).unwrap();
        assert_eq!(full.index(), 1);
        let fu = class_fusion(&full);
        assert_eq!(fu.fusion, vec![0, 1, 2]);
        assert_eq!(fu.z_sub, fu.z_parent);
    }

    #[test]
    fn pair_parsing_with_padding() {
        let pair = SubgroupPair::parse("s:4/s:3").unwrap();
        let e = pair.build().unwrap();
        assert_eq!(e.index(), 4);
        assert_eq!(e.sub.name, "s:3");
        let pair = SubgroupPair::parse("prod(s:3,s:3)/diag(s:3)").unwrap();
        let e = pair.build().unwrap();
        assert_eq!(e.index(), 6);
        assert!(SubgroupPair::parse("s:3").is_err());
        assert!(SubgroupPair::parse("s:3/s:4").unwrap().build().is_err());
    }

    #[test]
    fn fusion_size_bound() {
        // sum of |alpha_H| over sub classes fusing to beta stays within |beta|
        let pair = SubgroupPair::parse("s:4/d:4").unwrap();
        let e = pair.build().unwrap();
        assert_eq!(e.sub.order(), 8);
        let f = class_fusion(&e);
        let mut per_parent = vec![0usize; e.parent.class_count()];
        for (i, &b) in f.fusion.iter().enumerate() {
            per_parent[b] += e.sub.classes()[i].size();
        }
        for (b, &total) in per_parent.iter().enumerate() {
            assert!(total <= e.parent.classes()[b].size());
        }
        let _ = DEFAULT_ELEMENT_CAP;
    }
}
