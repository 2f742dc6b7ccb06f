#pragma once

#include <cstdint>

#include "saddle/system.hpp"

namespace saddle {

/// Kronecker-structured test problem with mesh size h = 1/(p+1):
/// A = blkdiag(L, L), L = I (x) T + T (x) I, B = [I (x) F, F (x) I], C = E (x) F,
/// with T = tridiag(-1, 2, -1)/h^2, F = tridiag(0, 1, -1)/h and
/// E = diag(1, p+1, ..., p^2-p+1). Sizes n = 2p^2, m = l = p^2. Needs p >= 2.
SaddlePointSystem gen_example1(int p, Form form = Form::Nonsymmetric);

/// Gaussian-kernel test problem: A = blkdiag(2 W^T W + I, D2, D3),
/// B = [E, -I, I], C = E^T with E = [Ehat (x) I; I (x) Ehat].
/// Sizes n = p(p+1) + 4p^2, m = 2p^2, l = p(p+1). Needs 2 <= p <= 64.
SaddlePointSystem gen_example2(int p, Form form = Form::Nonsymmetric);

/// Dense random instance: A = G^T G + I, B and C uniform in [-1, 1] with full
/// row rank (redrawn up to 20 times). Needs 1 <= l <= m <= n.
SaddlePointSystem gen_random_small(Index n, Index m, Index l, std::uint64_t seed,
                                   Form form = Form::Nonsymmetric);

/// The all-ones vector every generator uses as exact solution.
BlockVector ones_solution(const SaddlePointSystem& s);

}  // namespace saddle
