//! Arrange a nested cover into a containment tree and label each community
//! by its best-matching attribute.

use slpa::postprocess::{containment_forest, render_hierarchy};
use slpa::{load_attribute_table, Cover, GraphBuilder};

const ATTRS: &str = "node,team,site\n\
a,red,north\nb,red,north\nc,red,south\nd,blue,south\ne,blue,south\nf,blue,north\n";

pub fn run_example() -> String {
    let mut b = GraphBuilder::new();
    for name in ["a", "b", "c", "d", "e", "f"] {
        b.add_node(name);
    }
    let graph = b.build().0;
    let cover = Cover::new(6, vec![(0..6).collect(), vec![0, 1, 2], vec![0, 1], vec![3, 4, 5]]).unwrap();
    let attrs = load_attribute_table(ATTRS, &graph).expect("every node listed");
    render_hierarchy(&containment_forest(&cover), &graph, Some(&attrs)).unwrap()
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
