use emvkit::morphism::{finset_swap_hom, morphism_from_strong_hom, setminus_morphism, similar};

#[test]
fn probe() {
    let sm = setminus_morphism();
    let sw = morphism_from_strong_hom(&finset_swap_hom(3, 4));
    println!("sm≈sw: {}", similar(&sm, &sw, 3));
    println!("sw≈sm: {}", similar(&sw, &sm, 3));
    for e in sm.entries(3) {
        println!("sm entry dom={:?}", e.dom);
    }
    for e in sw.entries(3) {
        println!("sw entry dom={:?}", e.dom);
    }
    panic!("show output");
}
