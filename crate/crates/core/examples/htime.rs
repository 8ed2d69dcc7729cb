fn main() {
    for n in 2..=12 {
        let t0 = std::time::Instant::now();
        let rec = emptri_core::extremal::max_triangles_kite_free(n).unwrap();
        println!("h({n}) = {} ({} edges in witness) in {:?}", rec.h, rec.witness.edge_count(), t0.elapsed());
    }
}
