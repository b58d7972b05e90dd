//! Derivative-free local maximization: a standard Nelder–Mead simplex with
//! reflection/expansion/contraction/shrink, run to a parameter- or
//! value-spread tolerance. Multi-start orchestration lives in the
//! correlations module; this file only refines one start.

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    pub max_evals: usize,
    /// Terminate when the simplex extent per coordinate falls below this.
    pub param_tolerance: f64,
    /// Terminate when best and worst vertex values agree to this.
    pub value_tolerance: f64,
    /// Offset of the initial simplex vertices from the start point.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_evals: 2000,
            param_tolerance: 1e-8,
            value_tolerance: 1e-10,
            initial_step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub best_params: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Vertex {
    params: Vec<f64>,
    value: f64,
}

/// Maximize `f` from `start`. Zero-dimensional inputs evaluate once.
pub fn maximize_simplex(
    f: &mut dyn FnMut(&[f64]) -> f64,
    start: &[f64],
    opts: &SimplexOptions,
) -> SimplexResult {
    let n = start.len();
    let mut evals = 0usize;
    let mut eval = |params: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        f(params)
    };

    if n == 0 {
        let value = eval(start, &mut evals);
        return SimplexResult {
            best_params: Vec::new(),
            best_value: value,
            evaluations: evals,
            converged: true,
        };
    }

    let mut simplex: Vec<Vertex> = Vec::with_capacity(n + 1);
    simplex.push(Vertex {
        params: start.to_vec(),
        value: eval(start, &mut evals),
    });
    for k in 0..n {
        let mut p = start.to_vec();
        p[k] += opts.initial_step;
        let value = eval(&p, &mut evals);
        simplex.push(Vertex { params: p, value });
    }

    let mut converged = false;
    while evals < opts.max_evals {
        // descending by value: index 0 is the best vertex
        simplex.sort_by(|a, b| b.value.total_cmp(&a.value));

        let spread = simplex[0].value - simplex[n].value;
        let mut extent = 0.0f64;
        for k in 0..n {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for v in &simplex {
                lo = lo.min(v.params[k]);
                hi = hi.max(v.params[k]);
            }
            extent = extent.max(hi - lo);
        }
        if extent <= opts.param_tolerance || spread <= opts.value_tolerance {
            converged = true;
            break;
        }

        // centroid of all but the worst vertex
        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for k in 0..n {
                centroid[k] += v.params[k] / n as f64;
            }
        }
        let worst = simplex[n].value;
        let second_worst = simplex[n - 1].value;
        let best = simplex[0].value;

        let blend = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|k| centroid[k] + t * (centroid[k] - simplex[n].params[k]))
                .collect()
        };

        let reflected = blend(1.0);
        let reflected_value = eval(&reflected, &mut evals);

        if reflected_value > best {
            let expanded = blend(2.0);
            let expanded_value = eval(&expanded, &mut evals);
            simplex[n] = if expanded_value > reflected_value {
                Vertex {
                    params: expanded,
                    value: expanded_value,
                }
            } else {
                Vertex {
                    params: reflected,
                    value: reflected_value,
                }
            };
            continue;
        }
        if reflected_value > second_worst {
            simplex[n] = Vertex {
                params: reflected,
                value: reflected_value,
            };
            continue;
        }

        // contract toward the better of worst/reflected
        let contracted = if reflected_value > worst {
            blend(0.5)
        } else {
            blend(-0.5)
        };
        let contracted_value = eval(&contracted, &mut evals);
        if contracted_value > worst.max(reflected_value) {
            simplex[n] = Vertex {
                params: contracted,
                value: contracted_value,
            };
            continue;
        }

        // shrink everything toward the best vertex
        for idx in 1..=n {
            let shrunk: Vec<f64> = (0..n)
                .map(|k| simplex[0].params[k] + 0.5 * (simplex[idx].params[k] - simplex[0].params[k]))
                .collect();
            let value = eval(&shrunk, &mut evals);
            simplex[idx] = Vertex {
                params: shrunk,
                value,
            };
        }
    }

    simplex.sort_by(|a, b| b.value.total_cmp(&a.value));
    SimplexResult {
        best_params: simplex[0].params.clone(),
        best_value: simplex[0].value,
        evaluations: evals,
        converged,
    }
}
