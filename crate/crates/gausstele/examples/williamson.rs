//! Williamson normal forms: symplectic eigenvalues diagnose purity and
//! thermal occupation, and they are invariant under symplectic conjugation.
//!
//! Run with: cargo run --example williamson

use gausstele::symplectic::{
    make_tmsv_state, random_symplectic, williamson, GaussianState, SymplecticForm,
};
use rand::SeedableRng;

fn main() -> gausstele::Result<()> {
    let states: Vec<(&str, GaussianState)> = vec![
        ("vacuum", GaussianState::vacuum(1)),
        ("thermal(1.5)", GaussianState::thermal(1.5)?),
        ("tmsv(1.0)", make_tmsv_state(1.0)?),
        (
            "thermal(0.4) ⊗ thermal(2.0)",
            GaussianState::thermal(0.4)?.tensor(&GaussianState::thermal(2.0)?),
        ),
    ];
    for (name, st) in &states {
        let w = williamson(st)?;
        let form = SymplecticForm::new(st.modes());
        let sympl_defect =
            (&w.symplectic * form.matrix() * w.symplectic.transpose() - form.matrix()).amax();
        let rec_defect = (w.reconstruct() - st.cov()).amax();
        println!(
            "{name:<28} ν = {:?}  (SΩSᵀ−Ω: {sympl_defect:.1e}, rebuild: {rec_defect:.1e})",
            w.nus
                .iter()
                .map(|v| (v * 1e6).round() / 1e6)
                .collect::<Vec<_>>()
        );
    }

    // conjugating by a random symplectic scrambles the matrix, not the spectrum
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
    let s = random_symplectic(2, &mut rng);
    let scrambled = states[3].1.conjugate_symplectic(&s)?;
    let nus = williamson(&scrambled)?.nus;
    println!(
        "\nafter a random symplectic on the product state: ν = {:?}",
        nus.iter()
            .map(|v| (v * 1e6).round() / 1e6)
            .collect::<Vec<_>>()
    );
    Ok(())
}
