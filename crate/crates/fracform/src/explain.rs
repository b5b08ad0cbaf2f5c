//! Static descriptions of the inequalities behind each certificate field.

/// `(name, text)` for every topic `fracform explain` knows about.
pub const TOPICS: &[(&str, &str)] = &[
    (
        "rbar",
        "rbar = max over blocks h of min(r_{2h-1}, r_{2h}), blocks being the label pairs (1,2), (3,4), ..., (19,20).
The block attaining it has both weights >= rbar, and every block has some weight <= rbar.
Certificate fields: rbar, near_pair. Violation name: rbar_blocks.",
    ),
    (
        "near",
        "Near-pair lower bound. For the block (a, b) attaining rbar,
    C(Lambda_r E; a, b) >= (rbar / 2) * C(E; a, b),
where C(F; a, b) is the effective conductivity between boundary labels a and b.
The two cells of the block meet at one junction; splitting the level-1 minimizer
there into values t and 1 - t costs at least t^2 + (1 - t)^2 >= 1/2 of each cell's share.
Certificate fields: near_ratio, near_bound, near_margin = near_ratio - rbar/2 (must be >= -tol).",
    ),
    (
        "junction",
        "Junction split. With t the minimizer's value at the junction of the near block,
    t^2 + (1 - t)^2 >= 1/2,
with equality only at t = 1/2.
Certificate field: junction_value. Violation name: junction_split.",
    ),
    (
        "far",
        "Far-pair upper bound. With M(E) = max over l of C(E; l, l+10),
    C(Lambda_r E; l, l+10) <= M(E) * (H(r on one arc) + H(r on the other arc)) < (rbar / 2) * M(E),
where H(w_1..w_9) = min { sum w_i x_i^2 : sum x_i = 1 } = 1 / sum(1 / w_i), and the arcs are the
nine cells strictly between cell l and cell l+10 in each direction. Each arc contains four whole blocks,
each with a weight <= rbar, so sum(1 / w_i) > 4 / rbar on an arc and H < rbar / 4.
Certificate fields: far_label (the l attaining M), far_ratio, far_margin = rbar/2 - far_ratio (must be > 0),
far_ratios and min_far_margin for every l.",
    ),
    (
        "test-function",
        "Explicit competitor for the far pair at far_label: v = 0 on cell l, v = 1 on cell l+10, and on the
k-th cell of each arc the pinned minimizer of E between that cell's entry and exit labels, stepping
between consecutive partial sums of the harmonic-sum minimizer. Its energy satisfies
    C(Lambda_r E; l, l+10) <= S_{1,r}(E)(v) <= M(E) * (H_1 + H_2).
Certificate fields: test_function_energy, test_function_bound, far_conductivity_renormalized.
Violation names: test_function_order, test_function_bound.",
    ),
    (
        "phi",
        "Lyapunov ratio Phi(E) = M(E) / m(E), with m(E) the near-pair conductivity.
Combining the near and far bounds, Phi of the normalized next iterate is strictly below Phi(E),
so Phi can never settle at a fixed point. Trace columns: M, m, phi.",
    ),
    (
        "residual",
        "residual(E, F) = max over pairs of |e_p / sum(e) - f_p / sum(f)|, the distance between successive
normalized iterates. Iteration stops once it drops below tol. Trace column: residual.",
    ),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    TOPICS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    TOPICS.iter().map(|(n, _)| *n)
}
