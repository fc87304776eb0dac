//! Prints how fast the exact occurrence expectation for the P4 pattern
//! approaches its predicted scaling constant over the {P4} class.
use modgraph::graph::LabeledGraph;
use modgraph::mdtree::modular_decomposition;
use modgraph::prime::PrimeClass;
use modgraph::series::{solve_tree_series, t_tau_sum};
use modgraph::{predict_kh, solve_constants};
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn main() {
    let class = PrimeClass::p4();
    let order = 250usize;
    let bundle = solve_tree_series(&class, order).unwrap();
    let tau = modular_decomposition(&LabeledGraph::path(4));
    let series = t_tau_sum(&tau, &class, &bundle).unwrap();
    let consts = solve_constants(&class, 1e-12).unwrap();
    let pred = predict_kh(&LabeledGraph::path(4), &consts, &class).unwrap();
    println!("K_H = {:.6}", pred.k_h);
    for n in [25usize, 50, 100, 150, 200, 250] {
        let e_n = BigRational::new(series.count(n), bundle.t.count(n))
            .to_f64()
            .unwrap();
        let r = e_n / (pred.k_h * (n as f64).powi(3));
        println!(
            "n={n:4}  ratio={r:.5}  |r-1|*sqrt(n)={:.4}",
            (r - 1.0).abs() * (n as f64).sqrt()
        );
    }
}
