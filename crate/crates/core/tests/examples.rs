macro_rules! example {
    ($m:ident, $file:literal) => {
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $m() {
            $m::run_example().expect("example runs");
        }
    };
}

example!(coninv_sum, "coninv_sum.rs");
example!(skew_sum, "skew_sum.rs");
example!(involution_plus_diagonalizable, "involution_plus_diagonalizable.rs");
example!(coninvolutory_plus_condiagonalizable, "coninvolutory_plus_condiagonalizable.rs");
example!(concanonical, "concanonical.rs");
example!(consimilar_to_real, "consimilar_to_real.rs");
example!(frobenius, "frobenius.rs");
example!(real_2x2, "real_2x2.rs");
example!(certificates, "certificates.rs");
example!(generators, "generators.rs");
