use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_seidel::element::QHElement;
use toric_seidel::exec::Execution;
use toric_seidel::manifolds;
use toric_seidel::presentation::{build_presentation, preset_ring, seidel_element, Params};
use toric_seidel::rational::{int, ratio, Rational};
use toric_seidel::reduce::groebner;
use toric_seidel::seidel::{LoopProvenance, LoopRegistry, TorsionOrder};

fn params(pairs: &[(&str, Rational)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn asserted(reg: &mut LoopRegistry, name: &str, value: &QHElement) {
    let provenance = LoopProvenance::Asserted {
        citation: "generator of the preset ring".into(),
    };
    reg.register(name, value, TorsionOrder::Infinite, provenance)
        .unwrap();
}

fn preset_registry(name: &str, p: &Params) -> LoopRegistry {
    let pres = preset_ring(name, p).unwrap();
    let n = pres.nvars();
    let mut reg = LoopRegistry::new(Arc::new(groebner(&pres)));
    for (i, g) in pres.generators().to_vec().iter().enumerate() {
        asserted(&mut reg, g, &QHElement::generator(n, i));
    }
    reg
}

fn hexagon_registry() -> LoopRegistry {
    let (mu, c1, c2) = (int(1), ratio(1, 2), ratio(1, 4));
    let hex = manifolds::blowup_hexagon(&mu, &c1, &c2).unwrap();
    let pres = build_presentation(&hex, None, Params::new()).unwrap();
    let mut reg = LoopRegistry::new(Arc::new(groebner(&pres)));
    for (i, name) in ["y0", "x0", "z0"].into_iter().enumerate() {
        let s = seidel_element(&hex, i, None).unwrap();
        let provenance = LoopProvenance::Facet {
            facet: i,
            inverted: false,
            basis: s.provenance,
        };
        reg.register(name, &s.element, TorsionOrder::Infinite, provenance)
            .unwrap();
    }
    reg
}

fn kernel_search(c: &mut Criterion) {
    let cases = [
        (
            "even_mu2",
            preset_registry("even_hirzebruch", &params(&[("mu", int(2))])),
            10,
        ),
        (
            "odd_mu1",
            preset_registry("odd_hirzebruch", &params(&[("mu", int(1))])),
            50,
        ),
        ("hexagon", hexagon_registry(), 2),
    ];
    let mut group = c.benchmark_group("kernel_search");
    group.sample_size(10);
    for (name, reg, bound) in &cases {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let id = BenchmarkId::new(format!("{exec:?}"), format!("{name}/bound{bound}"));
            group.bench_with_input(id, bound, |b, &bound| {
                b.iter(|| reg.kernel_search(black_box(bound), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, kernel_search);
criterion_main!(benches);
