// Copyright 2026 The netreduce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netreduce/matrixeq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "netreduce/errors.hpp"

namespace netreduce {

using Eigen::Index;
using Eigen::MatrixXd;

namespace {

void require_finite_square(const MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
  if (!a.allFinite()) {
    throw ArgumentError(std::string(what) + ": matrix has non-finite entries");
  }
}

std::complex<double> block_eigenvalue(const MatrixXd& t, Index start, Index size) {
  if (size == 1) return {t(start, start), 0.0};
  const double a = t(start, start), b = t(start, start + 1);
  const double c = t(start + 1, start), d = t(start + 1, start + 1);
  const double half_tr = 0.5 * (a + d);
  const double disc = 0.25 * (a - d) * (a - d) + b * c;
  if (disc >= 0.0) {
    // Real pair; report the one closer to the origin so that zero detection
    // stays conservative.
    const double r = std::sqrt(disc);
    return {std::abs(half_tr - r) < std::abs(half_tr + r) ? half_tr - r : half_tr + r, 0.0};
  }
  return {half_tr, std::sqrt(-disc)};
}

std::vector<SchurBlock> scan_blocks(const MatrixXd& t, double tol) {
  std::vector<SchurBlock> blocks;
  const Index n = t.rows();
  for (Index i = 0; i < n;) {
    SchurBlock b;
    b.start = i;
    b.size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
    b.eigenvalue = block_eigenvalue(t, i, b.size);
    b.zero_real_part = std::abs(b.eigenvalue.real()) <= tol;
    blocks.push_back(b);
    i += b.size;
  }
  return blocks;
}

// Solves t11 x - x t22 = rhs for blocks of order at most 2.
MatrixXd small_sylvester(const MatrixXd& t11, const MatrixXd& t22, const MatrixXd& rhs,
                         double sign) {
  const Index p = t11.rows(), q = t22.rows();
  MatrixXd k = MatrixXd::Zero(p * q, p * q);
  for (Index c = 0; c < q; ++c) {
    k.block(c * p, c * p, p, p) += t11;
    for (Index r = 0; r < q; ++r) {
      k.block(r * p, c * p, p, p) += sign * t22(c, r) * MatrixXd::Identity(p, p);
    }
  }
  Eigen::FullPivLU<MatrixXd> lu(k);
  if (!lu.isInvertible()) {
    throw NumericalError("small Sylvester block is singular");
  }
  const Eigen::VectorXd v =
      lu.solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), p * q));
  return Eigen::Map<const MatrixXd>(v.data(), p, q);
}

// Swaps the adjacent diagonal blocks starting at j (orders p then q).
void swap_blocks(MatrixXd& t, MatrixXd& q, Index j, Index p, Index qs) {
  const Index w = p + qs;
  const MatrixXd x = small_sylvester(t.block(j, j, p, p), t.block(j + p, j + p, qs, qs),
                                     t.block(j, j + p, p, qs), -1.0);
  MatrixXd z(w, qs);
  z.topRows(p) = -x;
  z.bottomRows(qs).setIdentity();
  Eigen::HouseholderQR<MatrixXd> qr(z);
  const MatrixXd qw = qr.householderQ() * MatrixXd::Identity(w, w);
  t.middleRows(j, w) = qw.transpose() * t.middleRows(j, w);
  t.middleCols(j, w) = t.middleCols(j, w) * qw;
  q.middleCols(j, w) = q.middleCols(j, w) * qw;
  t.block(j + qs, j, p, qs).setZero();
}

struct ZeroInfo {
  int block = -1;  // index into blocks, -1 if none
};

// Enforces semistability: no eigenvalue right of -tol except at most one
// simple real zero, which must sit in a 1x1 block.
ZeroInfo classify_semistable(const RealSchurForm& s, const char* what) {
  ZeroInfo info;
  for (std::size_t k = 0; k < s.blocks.size(); ++k) {
    const auto& b = s.blocks[k];
    const double re = b.eigenvalue.real(), im = std::abs(b.eigenvalue.imag());
    if (b.zero_real_part) {
      if (im > s.zero_tol) {
        throw StabilityError(std::string(what) +
                             ": nonzero eigenvalue on the imaginary axis (Im = " +
                             std::to_string(im) + ")");
      }
      if (b.size == 2 || info.block >= 0) {
        throw MultiplicityError(std::string(what) +
                                ": zero eigenvalue is not simple");
      }
      info.block = static_cast<int>(k);
    } else if (re > 0.0) {
      throw StabilityError(std::string(what) + ": eigenvalue with positive real part " +
                           std::to_string(re));
    }
  }
  return info;
}

}  // namespace

int RealSchurForm::zero_real_blocks() const {
  return static_cast<int>(std::count_if(blocks.begin(), blocks.end(),
                                        [](const SchurBlock& b) { return b.zero_real_part; }));
}

double spectral_norm(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  const MatrixXd g = a.rows() >= a.cols() ? MatrixXd(a.transpose() * a)
                                          : MatrixXd(a * a.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

RealSchurForm real_schur(const MatrixXd& a, double zero_tol_rel) {
  require_finite_square(a, "real_schur");
  RealSchurForm form;
  const Index n = a.rows();
  form.zero_tol = zero_tol_rel * spectral_norm(a);
  if (n == 0) {
    form.q.resize(0, 0);
    form.t.resize(0, 0);
    return form;
  }

  Eigen::RealSchur<MatrixXd> rs(n);
  rs.compute(a, true);
  if (rs.info() != Eigen::Success) {
    throw ConvergenceError("real_schur: QR iteration did not converge", rs.getMaxIterations());
  }
  form.t = rs.matrixT();
  form.q = rs.matrixU();
  for (Index c = 0; c < n; ++c) {
    for (Index r = c + 2; r < n; ++r) form.t(r, c) = 0.0;
  }

  // Stable partition: bubble each zero-real-part block behind the
  // nonzero blocks that follow it, last one first.
  auto blocks = scan_blocks(form.t, form.zero_tol);
  for (int k = static_cast<int>(blocks.size()) - 1; k >= 0; --k) {
    if (!blocks[k].zero_real_part) continue;
    std::size_t pos = static_cast<std::size_t>(k);
    while (pos + 1 < blocks.size() && !blocks[pos + 1].zero_real_part) {
      const Index p = blocks[pos].size, qs = blocks[pos + 1].size;
      swap_blocks(form.t, form.q, blocks[pos].start, p, qs);
      SchurBlock moved = blocks[pos + 1];
      moved.start = blocks[pos].start;
      moved.eigenvalue = block_eigenvalue(form.t, moved.start, moved.size);
      SchurBlock zero = blocks[pos];
      zero.start = moved.start + moved.size;
      zero.eigenvalue = block_eigenvalue(form.t, zero.start, zero.size);
      blocks[pos] = moved;
      blocks[pos + 1] = zero;
      ++pos;
    }
  }
  form.blocks = std::move(blocks);
  return form;
}

MatrixXd solve_standard_lyapunov(const MatrixXd& a, const MatrixXd& q, double zero_tol_rel) {
  require_finite_square(a, "solve_standard_lyapunov");
  if (q.rows() != a.rows() || q.cols() != a.cols()) {
    throw DimensionError("solve_standard_lyapunov: q does not match a");
  }
  const Index n = a.rows();
  if (n == 0) return MatrixXd(0, 0);
  const double tol = zero_tol_rel * spectral_norm(a);

  Eigen::ComplexSchur<MatrixXd> cs(a, true);
  if (cs.info() != Eigen::Success) {
    throw ConvergenceError("solve_standard_lyapunov: complex Schur did not converge",
                           cs.getMaxIterations());
  }
  const Eigen::MatrixXcd& t = cs.matrixT();
  const Eigen::MatrixXcd& u = cs.matrixU();
  for (Index i = 0; i < n; ++i) {
    if (t(i, i).real() >= -tol) {
      throw StabilityError("solve_standard_lyapunov: matrix is not Hurwitz (eigenvalue " +
                           std::to_string(t(i, i).real()) + ")");
    }
  }

  // t y + y t^H = f, solved from the bottom-right corner.
  const Eigen::MatrixXcd f = -(u.adjoint() * q * u);
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (Index i = n - 1; i >= 0; --i) {
    for (Index j = n - 1; j >= 0; --j) {
      std::complex<double> s = f(i, j);
      const Index ti = n - 1 - i, tj = n - 1 - j;
      if (ti > 0) s -= (t.row(i).segment(i + 1, ti) * y.col(j).segment(i + 1, ti))(0, 0);
      if (tj > 0) s -= (y.row(i).segment(j + 1, tj) * t.row(j).segment(j + 1, tj).adjoint())(0, 0);
      y(i, j) = s / (t(i, i) + std::conj(t(j, j)));
    }
  }
  MatrixXd x = (u * y * u.adjoint()).real();
  return 0.5 * (x + x.transpose());
}

double sylvester_residual(const MatrixXd& a, const MatrixXd& b, const MatrixXd& c,
                          const MatrixXd& x) {
  return (a * x + x * b + c).norm();
}

SolveResult solve_sylvester_like(const RealSchurForm& sa, const RealSchurForm& sb,
                                 const MatrixXd& c, const SolveOptions& opts) {
  const Index n1 = sa.size(), n2 = sb.size();
  if (c.rows() != n1 || c.cols() != n2) {
    throw DimensionError("solve_sylvester_like: right-hand side has wrong shape");
  }
  const ZeroInfo za = classify_semistable(sa, "solve_sylvester_like(a)");
  const ZeroInfo zb = classify_semistable(sb, "solve_sylvester_like(b)");

  const MatrixXd& ta = sa.t;
  const MatrixXd& tb = sb.t;
  const MatrixXd rhs = -(sa.q.transpose() * c * sb.q);
  MatrixXd y = MatrixXd::Zero(n1, n2);
  SolveReport report;

  for (std::size_t kb = 0; kb < sb.blocks.size(); ++kb) {
    const Index k0 = sb.blocks[kb].start, kq = sb.blocks[kb].size;
    for (std::size_t ib = sa.blocks.size(); ib-- > 0;) {
      const Index i0 = sa.blocks[ib].start, ip = sa.blocks[ib].size;
      MatrixXd r = rhs.block(i0, k0, ip, kq);
      const Index below = n1 - (i0 + ip);
      if (below > 0) {
        r.noalias() -= ta.block(i0, i0 + ip, ip, below) * y.block(i0 + ip, k0, below, kq);
      }
      if (k0 > 0) {
        r.noalias() -= y.block(i0, 0, ip, k0) * tb.block(0, k0, k0, kq);
      }
      if (static_cast<int>(ib) == za.block && static_cast<int>(kb) == zb.block) {
        report.consistency_defect = r.norm();
        report.singular_blocks_zeroed += 1;
        y(i0, k0) = opts.free_value;
        continue;
      }
      y.block(i0, k0, ip, kq) =
          small_sylvester(ta.block(i0, i0, ip, ip), tb.block(k0, k0, kq, kq), r, 1.0);
    }
  }

  const double cnorm = c.norm();
  if (report.consistency_defect > opts.consistency_tol_rel * cnorm) {
    throw InconsistentEquationError(
        "solve_sylvester_like: singular block is inconsistent (defect " +
            std::to_string(report.consistency_defect) + ")",
        report.consistency_defect);
  }

  SolveResult out;
  out.x = sa.q * y * sb.q.transpose();
  const MatrixXd a = sa.q * ta * sa.q.transpose();
  const MatrixXd b = sb.q * tb * sb.q.transpose();
  report.residual_rel = sylvester_residual(a, b, c, out.x) / std::max(1.0, cnorm);
  out.report = report;
  return out;
}

SolveResult solve_sylvester_like(const MatrixXd& a, const MatrixXd& b, const MatrixXd& c,
                                 const SolveOptions& opts) {
  require_finite_square(a, "solve_sylvester_like");
  require_finite_square(b, "solve_sylvester_like");
  auto out = solve_sylvester_like(real_schur(a, opts.zero_tol_rel),
                                  real_schur(b, opts.zero_tol_rel), c, opts);
  out.report.residual_rel = sylvester_residual(a, b, c, out.x) / std::max(1.0, c.norm());
  return out;
}

SolveResult solve_lyapunov_like(const RealSchurForm& sa, const RealSchurForm& sat,
                                const MatrixXd& c, const SolveOptions& opts) {
  auto out = solve_sylvester_like(sa, sat, c, opts);
  out.x = 0.5 * (out.x + out.x.transpose()).eval();
  const MatrixXd a = sa.q * sa.t * sa.q.transpose();
  out.report.residual_rel =
      sylvester_residual(a, a.transpose(), c, out.x) / std::max(1.0, c.norm());
  return out;
}

SolveResult solve_lyapunov_like(const MatrixXd& a, const MatrixXd& c, const SolveOptions& opts) {
  require_finite_square(a, "solve_lyapunov_like");
  if (c.rows() != a.rows() || c.cols() != a.cols()) {
    throw DimensionError("solve_lyapunov_like: c does not match a");
  }
  auto out = solve_lyapunov_like(real_schur(a, opts.zero_tol_rel),
                                 real_schur(a.transpose(), opts.zero_tol_rel), c, opts);
  out.report.residual_rel =
      sylvester_residual(a, a.transpose(), c, out.x) / std::max(1.0, c.norm());
  return out;
}

}  // namespace netreduce
