use properad_kit::presheaf::{has_unique_inner_fillers, is_nerve, is_segal, nerve_truncated};
use properad_kit::properad::random_properad;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    for seed in 0..20u64 {
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_properad(&mut rng);
        let t_mk = t.elapsed();
        let ax = p.check_axioms(3);
        let t_ax = t.elapsed();
        assert!(ax.ok());
        let x = nerve_truncated(&p, 3).unwrap();
        let t_nv = t.elapsed();
        let total: usize = x.levels().map(|l| l.elements.len()).sum();
        let sg = is_segal(&x, 3).unwrap();
        let t_sg = t.elapsed();
        assert!(sg.pass);
        let uq = has_unique_inner_fillers(&x, 3).unwrap();
        let t_uq = t.elapsed();
        assert!(uq.pass);
        let nv = is_nerve(&x, 3).unwrap();
        assert!(nv.report.pass);
        println!(
            "seed {seed}: colors {} caps {:?} ops {} graphices {total} | mk {:.1?} ax {:.1?} nerve {:.1?} segal {:.1?} horn {:.1?} isnerve {:.1?}",
            p.colors().len(), p.arity_bounds(), p.all_ops().count(), t_mk, t_ax - t_mk, t_nv - t_ax, t_sg - t_nv, t_uq - t_sg, t.elapsed() - t_uq
        );
    }
}
