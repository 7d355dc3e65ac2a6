use hechain::json::ElementJson;
use hechain::scalar::{Scalar, Var};
use hechain::{AffineAlgebra, BlobAlgebra, HeckeAlgebra};

#[test]
fn hecke_round_trip() {
    let h = HeckeAlgebra::generic(3);
    let e = h.free_transfer(2, &Scalar::var(Var::X)).unwrap();
    let json = ElementJson::from(&e);
    let text = serde_json::to_string(&json).unwrap();
    assert!(text.starts_with("{\"basis\":\"hecke\",\"rank\":3,\"terms\":["));
    let back: ElementJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_hecke().unwrap(), e);
    assert!(back.to_affine().is_err());
}

#[test]
fn affine_round_trip() {
    let a = AffineAlgebra::generic(3);
    let e = &a.mul(&a.y(2), &a.sigma(1)) + &a.y_pow(3, -1).unwrap().scale(&Scalar::var(Var::XI));
    let json = ElementJson::from(&e);
    let back: ElementJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
    assert_eq!(back.to_affine().unwrap(), e);
    if let ElementJson::Affine { terms, .. } = &json {
        assert!(terms.iter().any(|t| t.ypow == vec![0, 0, -1]));
    } else {
        panic!("wrong basis");
    }
}

#[test]
fn blob_round_trip() {
    let b = BlobAlgebra::generic(3);
    let e = &b.product([&b.e(1).unwrap(), &b.blob(), &b.e(2).unwrap()]) + &b.y1();
    let json = ElementJson::from(&e);
    let back: ElementJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
    assert_eq!(back.to_blob().unwrap(), e);
    let broken = r#"{"basis":"blob","rank":2,"terms":[{"diagram":[[0,2],[1,3]],"blobs":[],"coeff":{"num":[],"den":[]}}]}"#;
    assert!(serde_json::from_str::<ElementJson>(broken).is_err() || serde_json::from_str::<ElementJson>(broken).unwrap().to_blob().is_err());
}
