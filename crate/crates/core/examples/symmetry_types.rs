//! Index groups of the five symmetry types, sampled on random finite
//! representations.

use std::collections::BTreeMap;

use qwalk::lattice::CMatrix;
use qwalk::symmetry::SymmetryType;
use qwalk::testing::random_representation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qwalk::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ty in SymmetryType::ALL {
        let mut seen = BTreeMap::new();
        for _ in 0..200 {
            let (rep, _) = random_representation(ty, 4, &mut rng);
            let n = rep.structure().total_dim();
            let idx = rep.rep_index(&CMatrix::identity(n, n), 1e-8)?;
            *seen.entry(idx.value).or_insert(0) += 1;
        }
        println!("{:>4} ({}): {seen:?}", ty.label(), ty.index_group());
    }
    Ok(())
}
