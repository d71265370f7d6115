use super::{buoy_chromatic, color_pseudo_buoy, optimal_coloring, Coloring, Pattern};
use crate::error::Result;
use crate::graph::Graph;
use crate::recognition::{check_p5_p5bar_free, find_c5, grow_buoy_unchecked};

/// Optimal coloring of a (P5, co-P5)-free graph, following its structure.
///
/// A disconnected complement splits the graph into a join whose parts get
/// disjoint palettes. Otherwise a C5 is grown into a maximal buoy; a full
/// buoy is colored bag by bag and combined with [`color_pseudo_buoy`], and a
/// buoy that is a proper module is colored the same way and then collapsed
/// to a clique of its chromatic number before coloring the rest. C5-free
/// graphs of the class are perfect and go to the exact oracle.
pub fn structural_color(g: &Graph) -> Result<Coloring> {
    check_p5_p5bar_free(g)?;
    color(g)
}

fn color(g: &Graph) -> Result<Coloring> {
    let n = g.order();
    if n == 0 {
        return Ok(Coloring::new(Vec::new()));
    }

    let parts = g.co_components();
    if parts.len() > 1 {
        let mut out = vec![0usize; n];
        let mut offset = 0;
        for part in parts {
            let sub = color(&g.induced_subgraph(part)?)?;
            for (v, c) in part.iter().zip(sub.colors()) {
                out[v] = offset + c;
            }
            offset += sub.max_color();
        }
        return Ok(Coloring::new(out));
    }

    let Some(c5) = find_c5(g) else {
        return Ok(optimal_coloring(g));
    };
    let buoy = grow_buoy_unchecked(g, c5)?;
    let bag_colorings: [Coloring; 5] = {
        let mut cols = Vec::with_capacity(5);
        for i in 0..5 {
            cols.push(color(&buoy.bag_graph(i))?);
        }
        cols.try_into().expect("five bags")
    };
    let pattern = Pattern(std::array::from_fn(|i| bag_colorings[i].max_color()));
    let h = buoy_chromatic(&pattern);
    let inner = color_pseudo_buoy(buoy.as_pseudo(), &bag_colorings, h)?;
    if buoy.is_full() {
        return Ok(inner);
    }

    // collapse the buoy module to K_h; the clique takes the place of its
    // smallest vertex, so its vertices are split..split+h in the new graph
    let module = buoy.vertex_set();
    let collapsed = g.substitute(module, &Graph::complete(h))?;
    let outer = color(&collapsed)?;
    let first = module.first().expect("buoy is nonempty");
    let rest: Vec<usize> = g.vertices().difference(module).to_vec();
    let split = rest.partition_point(|&v| v < first);
    let mut out = vec![0usize; n];
    for (i, &v) in rest.iter().enumerate() {
        out[v] = outer.color(if i < split { i } else { i + h });
    }
    for (v, c) in module.iter().zip(inner.colors()) {
        out[v] = outer.color(split + c - 1);
    }
    Ok(Coloring::new(out))
}
