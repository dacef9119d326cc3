//! Every example runs and produces the values it advertises.

mod block_matrices {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/block_matrices.rs"));

    #[test]
    fn runs() {
        let ms = run_example().unwrap();
        assert_eq!(ms.len(), 4);
        assert_eq!(ms[0].constant_entries().unwrap()[1], vec![0, 0, 0, 1, 0]);
        assert!(ms[3].constant_entries().is_none());
    }
}

mod weight_40_newforms {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weight_40_newforms.rs"));

    #[test]
    fn runs() {
        let s = run_example().unwrap();
        assert_eq!((s.new_dim(), s.old_dim()), (3, 2));
        assert!(s.new_square_is_t_k());
    }
}

mod slopes {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/slopes.rs"));

    #[test]
    fn runs() {
        let r = run_example().unwrap();
        let total: usize = r.all_slopes().iter().map(|s| s.multiplicity).sum();
        assert_eq!(total, 39);
    }
}

mod diagonalizability {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/diagonalizability.rs"));

    #[test]
    fn runs() {
        let v = run_example().unwrap();
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|(_, d)| !d.diagonalizable));
    }
}

mod new_old {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/new_old.rs"));

    #[test]
    fn runs() {
        for (q, eig) in run_example().unwrap() {
            let p = PrimePower::from_q(q).unwrap().p();
            let mut lam = vec![0i64; q as usize + 2];
            lam[2] += 2;
            lam[q as usize + 1] -= 1;
            assert!(eig.contains(&Some(TPoly::from_ints(p, &lam))), "q={q}");
            assert!(eig.contains(&Some(TPoly::zero(p))), "q={q}");
        }
    }
}

mod gm_scan {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gm_scan.rs"));

    #[test]
    fn runs() {
        let r = run_example().unwrap();
        let s = r.summary(Rational::new(5, 2)).unwrap();
        assert!(s.holds());
        assert_eq!(s.period, 4);
    }
}

mod lucas {
    #![allow(dead_code)]
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lucas.rs"));

    #[test]
    fn runs() {
        // 1000 = 2626_7, 343 = 1000_7; 40 = 1111_3, 20 = 0202_3
        assert_eq!(run_example().unwrap(), vec![2, 0, 0, 0, 0]);
    }
}
