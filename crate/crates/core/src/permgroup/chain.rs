//! Deterministic Schreier–Sims construction of a base and strong generating
//! set.

use crate::error::{Error, Result};
use crate::perm::Permutation;

struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            generators: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        level.rebuild();
        level
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.generators {
                let y = s.image(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().compose(s);
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// Stabilizer chain `G = G_0 ≥ G_1 ≥ … ≥ G_k = 1` with fundamental orbits.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds the chain, aborting with `CapExceeded` as soon as the product
    /// of orbit lengths (which only grows during the construction) passes
    /// `cap`.
    pub fn build(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            let (h, depth) = chain.sift(g, 0);
            if !h.is_identity() {
                chain.add_strong_generator(h, 0, depth);
                chain.check_cap(cap)?;
            }
        }
        'restart: loop {
            for i in (0..chain.levels.len()).rev() {
                let level = &chain.levels[i];
                for &beta in &level.orbit {
                    let u = level.transversal[beta].as_ref().unwrap();
                    for s in &level.generators {
                        let img = s.image(beta);
                        let u_img = level.transversal[img].as_ref().unwrap();
                        let schreier = u.compose(s).compose(&u_img.inverse());
                        if schreier.is_identity() {
                            continue;
                        }
                        let (h, depth) = chain.sift(&schreier, i + 1);
                        if !h.is_identity() {
                            chain.add_strong_generator(h, i + 1, depth);
                            chain.check_cap(cap)?;
                            continue 'restart;
                        }
                    }
                }
            }
            break;
        }
        Ok(chain)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(())
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn add_strong_generator(&mut self, h: Permutation, from: usize, depth: usize) {
        if depth == self.levels.len() {
            let point = h
                .first_moved()
                .expect("nonidentity residue moves some point");
            self.levels.push(Level::new(point, self.degree));
        }
        for level in &mut self.levels[from..=depth] {
            level.generators.push(h.clone());
            level.rebuild();
        }
    }

    /// Product of the fundamental orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }
}
