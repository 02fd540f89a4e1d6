use std::time::Instant;
fn main() {
    let mut o = bessel_sym_oracle::Oracle::new();
    for (label, f) in [("K_40(50)", 0), ("J_40(50)", 1), ("Y_40(50)", 2), ("2F1(20,22,1,0.9)", 3)] {
        let t = Instant::now();
        let v = match f {
            0 => o.besselk(40, 50.0),
            1 => o.besselj(40, 50.0),
            2 => o.bessely(40, 50.0),
            _ => o.gauss_2f1(20.0, 22.0, 1.0, 0.9),
        };
        println!("{label} = {v:e} in {:?}", t.elapsed());
    }
}
