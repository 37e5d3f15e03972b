use faer::MatRef;

use super::BubbleConfiguration;
use crate::layerpot::{assemble_adjoint_double_layer, assemble_single_layer};
use crate::{c, CMat, Error, Result, C64};

/// Block operator acting on (ψ_b, ψ) per bubble, in bubble order.
#[derive(Debug, Clone)]
pub struct BlockSystem {
    pub matrix: CMat,
    pub omega: C64,
    /// Start offset of each block row/column.
    pub offsets: Vec<usize>,
}

impl BlockSystem {
    pub fn block_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Block (row, col), zero-based.
    pub fn block(&self, row: usize, col: usize) -> MatRef<'_, C64> {
        let (r0, r1) = (self.offsets[row], self.offsets[row + 1]);
        let (c0, c1) = (self.offsets[col], self.offsets[col + 1]);
        self.matrix.as_ref().submatrix(r0, c0, r1 - r0, c1 - c0)
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }
}

fn check_omega(omega: C64) -> Result<()> {
    if omega == c(0.0, 0.0) || !(omega.re.is_finite() && omega.im.is_finite()) {
        return Err(Error::argument("omega", format!("must be finite and non-zero, got {omega}")));
    }
    Ok(())
}

// Re ω < 0 lies across the principal cut from the physical upper half-plane.
// The continuation from there satisfies G(−z̄) = conj G(z), so the system at
// −ω̄ is the conjugate of the one at ω.
fn mirrored(
    omega: C64,
    config: &BubbleConfiguration,
    assemble: fn(C64, &BubbleConfiguration) -> Result<BlockSystem>,
) -> Result<BlockSystem> {
    let mut sys = assemble(-omega.conj(), config)?;
    let n = sys.matrix.nrows();
    for j in 0..n {
        for i in 0..n {
            sys.matrix[(i, j)] = sys.matrix[(i, j)].conj();
        }
    }
    sys.omega = omega;
    Ok(sys)
}

fn put(target: &mut CMat, r0: usize, c0: usize, block: &CMat, scale: C64, diagonal: C64) {
    for j in 0..block.ncols() {
        for i in 0..block.nrows() {
            let d = if i == j { diagonal } else { c(0.0, 0.0) };
            target[(r0 + i, c0 + j)] = (block[(i, j)] + d) * scale;
        }
    }
}

/// Single bubble:
/// ```text
/// [ S^{k_b}            −S^k            ]
/// [ −½I + K^{k_b,*}    −δ(½I + K^{k,*}) ]
/// ```
pub fn assemble_a(omega: C64, config: &BubbleConfiguration) -> Result<BlockSystem> {
    check_omega(omega)?;
    if omega.re < 0.0 {
        return mirrored(omega, config, assemble_a);
    }
    if config.bubble_count() != 1 {
        return Err(Error::argument("config", "assemble_a needs exactly one bubble"));
    }
    let b = &config.boundaries[0];
    let m = &config.materials;
    let (k, kb) = (m.k(omega), m.k_b(omega));
    let n = b.len();
    let mut a = CMat::zeros(2 * n, 2 * n);
    let one = c(1.0, 0.0);
    put(&mut a, 0, 0, &assemble_single_layer(b, b, kb)?.entries, one, c(0.0, 0.0));
    put(&mut a, 0, n, &assemble_single_layer(b, b, k)?.entries, -one, c(0.0, 0.0));
    put(&mut a, n, 0, &assemble_adjoint_double_layer(b, b, kb)?.entries, one, c(-0.5, 0.0));
    put(&mut a, n, n, &assemble_adjoint_double_layer(b, b, k)?.entries, c(-m.delta(), 0.0), c(0.5, 0.0));
    Ok(BlockSystem { matrix: a, omega, offsets: vec![0, n, 2 * n] })
}

/// Two bubbles, unknowns (ψ_b1, ψ1, ψ_b2, ψ2):
/// ```text
/// [ S₁^{k_b}          −S₁^k               0                  −S₁₂^k            ]
/// [ −½I + K₁^{k_b,*}  −δ(½I + K₁^{k,*})   0                  −K₁₂^{k,*}         ]
/// [ 0                 −S₂₁^k              S₂^{k_b}           −S₂^k             ]
/// [ 0                 −K₂₁^{k,*}          −½I + K₂^{k_b,*}   −δ(½I + K₂^{k,*})  ]
/// ```
pub fn assemble_a2(omega: C64, config: &BubbleConfiguration) -> Result<BlockSystem> {
    check_omega(omega)?;
    if omega.re < 0.0 {
        return mirrored(omega, config, assemble_a2);
    }
    if config.bubble_count() != 2 {
        return Err(Error::argument("config", "assemble_a2 needs exactly two bubbles"));
    }
    let (b1, b2) = (&config.boundaries[0], &config.boundaries[1]);
    let m = &config.materials;
    let (k, kb) = (m.k(omega), m.k_b(omega));
    let (n1, n2) = (b1.len(), b2.len());
    let offsets = vec![0, n1, 2 * n1, 2 * n1 + n2, 2 * n1 + 2 * n2];
    let mut a = CMat::zeros(offsets[4], offsets[4]);
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let minus_delta = c(-m.delta(), 0.0);
    for (p, (own, other)) in [(b1, b2), (b2, b1)].into_iter().enumerate() {
        let (row, col) = (offsets[2 * p], offsets[2 * p]);
        let nn = own.len();
        let cross_col = offsets[2 * (1 - p) + 1];
        put(&mut a, row, col, &assemble_single_layer(own, own, kb)?.entries, one, zero);
        put(&mut a, row, col + nn, &assemble_single_layer(own, own, k)?.entries, -one, zero);
        put(&mut a, row + nn, col, &assemble_adjoint_double_layer(own, own, kb)?.entries, one, c(-0.5, 0.0));
        put(&mut a, row + nn, col + nn, &assemble_adjoint_double_layer(own, own, k)?.entries, minus_delta, c(0.5, 0.0));
        put(&mut a, row, cross_col, &assemble_single_layer(own, other, k)?.entries, -one, zero);
        put(&mut a, row + nn, cross_col, &assemble_adjoint_double_layer(own, other, k)?.entries, -one, zero);
    }
    Ok(BlockSystem { matrix: a, omega, offsets })
}

/// A for one bubble, A₂ for two.
pub fn assemble_system(omega: C64, config: &BubbleConfiguration) -> Result<BlockSystem> {
    match config.bubble_count() {
        1 => assemble_a(omega, config),
        2 => assemble_a2(omega, config),
        n => Err(Error::argument("config", format!("{n} bubbles are not supported"))),
    }
}
