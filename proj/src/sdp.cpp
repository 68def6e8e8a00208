#include "fgm/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fgm {

namespace {

constexpr int kDimCap = 1500;

// The solver works on the standard conic pair
//   (P) min <C, X>   s.t. <A_i, X> = b_i, X >= 0
//   (D) max b.y      s.t. sum_i y_i A_i + S = C, S >= 0
// with A_i = constraints[i], C = constant_term, b = objective. The LMI
// problem "min objective.y with constant + sum y_i F_i >= 0" is (D) under
// y -> -y, so the reported value is -(dual objective) and the reported
// variables are the negated dual multipliers. Weak duality in the reported
// convention: primal_value >= dual_value.

struct Entry {  // fully expanded (non-symmetrized) triplet
  int row, col;
  cplx value;
};

using BlockEntries = std::vector<std::vector<Entry>>;  // per block

struct Expanded {
  std::vector<BlockEntries> cons;  // [constraint][block] -> entries
  BlockEntries constant;           // [block] -> entries
  std::vector<double> a_fro;       // Frobenius norm per constraint
};

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("solve_sdp: " + msg);
}

// Hermitian part, safe against expression aliasing (adjoint reads transposed
// coefficients, so the argument is materialized first).
CMatrix hermitize(CMatrix a) {
  const CMatrix ad = a.adjoint();
  return (a + ad) / 2.0;
}

BlockEntries expand(const std::vector<SdpTriplet>& ts,
                    const std::vector<int>& dims) {
  BlockEntries out(dims.size());
  for (const SdpTriplet& t : ts) {
    if (t.block < 0 || t.block >= static_cast<int>(dims.size()))
      bad("triplet references undeclared block");
    if (t.row < 0 || t.col < 0 || t.row >= dims[t.block] ||
        t.col >= dims[t.block])
      bad("triplet entry out of range");
    if (t.row == t.col) {
      if (std::abs(t.value.imag()) > 1e-12)
        bad("diagonal triplet must be real");
      out[t.block].push_back({t.row, t.col, cplx(t.value.real(), 0.0)});
    } else {
      out[t.block].push_back({t.row, t.col, t.value});
      out[t.block].push_back({t.col, t.row, std::conj(t.value)});
    }
  }
  return out;
}

std::vector<CMatrix> to_dense(const BlockEntries& be,
                              const std::vector<int>& dims) {
  std::vector<CMatrix> out;
  out.reserve(dims.size());
  for (size_t b = 0; b < dims.size(); ++b) {
    CMatrix m = CMatrix::Zero(dims[b], dims[b]);
    for (const Entry& e : be[b]) m(e.row, e.col) += e.value;
    out.push_back(std::move(m));
  }
  return out;
}

double sparse_dot(const BlockEntries& be, const std::vector<CMatrix>& dense) {
  // <A, D> = sum over entries value * D(col, row); real for Hermitian pairs.
  cplx acc{0.0, 0.0};
  for (size_t b = 0; b < be.size(); ++b)
    for (const Entry& e : be[b]) acc += e.value * dense[b](e.col, e.row);
  return acc.real();
}

// Hermitian square root and inverse square root via eigendecomposition;
// eigenvalues are clamped below to keep the scaling point well defined.
void sqrt_pair(const CMatrix& a, CMatrix& root, CMatrix& inv_root) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((a + a.adjoint()) / 2.0);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double floor_val = std::max(1e-300, ev.cwiseAbs().maxCoeff() * 1e-16);
  Eigen::VectorXd r(ev.size()), ir(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double v = std::max(ev(i), floor_val);
    r(i) = std::sqrt(v);
    ir(i) = 1.0 / r(i);
  }
  const CMatrix& u = es.eigenvectors();
  root = u * r.asDiagonal() * u.adjoint();
  inv_root = u * ir.asDiagonal() * u.adjoint();
}

// Largest alpha in (0, cap] with M + alpha*D >= 0, given a Cholesky factor of M.
double max_step(const Eigen::LLT<CMatrix>& llt, const CMatrix& d, double cap) {
  const CMatrix l = llt.matrixL();
  const CMatrix li_d = l.triangularView<Eigen::Lower>().solve(d);
  const CMatrix b = l.triangularView<Eigen::Lower>()
                        .solve(li_d.adjoint())
                        .adjoint();  // L^-1 D L^-*
  Eigen::SelfAdjointEigenSolver<CMatrix> es((b + b.adjoint()) / 2.0,
                                            Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues()(0);
  if (lam_min >= -1e-14) return cap;
  return std::min(cap, -1.0 / lam_min);
}

struct Iterate {
  std::vector<CMatrix> x, s;  // (P) variable and (D) slack, both PSD
  std::vector<double> y;      // (D) multipliers
};

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, double gap_tol, double feas_tol,
                      int max_iter) {
  if (gap_tol < 1e-9 || feas_tol < 1e-9) bad("tolerances must be >= 1e-9");
  const int nblocks = static_cast<int>(p.block_dims.size());
  if (nblocks == 0) bad("no blocks");
  int total_dim = 0;
  for (int d : p.block_dims) {
    if (d <= 0) bad("non-positive block dimension");
    total_dim += d;
  }
  if (total_dim > kDimCap) bad("total PSD dimension exceeds cap 1500");
  const int m = static_cast<int>(p.constraints.size());
  if (m == 0) bad("no variables");
  if (static_cast<int>(p.objective.size()) != m)
    bad("objective size mismatch");

  Expanded ex;
  ex.constant = expand(p.constant_term, p.block_dims);
  ex.cons.reserve(m);
  ex.a_fro.reserve(m);
  for (const auto& c : p.constraints) {
    ex.cons.push_back(expand(c, p.block_dims));
    double fr = 0.0;
    for (const auto& blk : ex.cons.back())
      for (const Entry& e : blk) fr += std::norm(e.value);
    ex.a_fro.push_back(std::sqrt(fr));
  }

  const std::vector<CMatrix> cmat = to_dense(ex.constant, p.block_dims);
  double c_max = 0.0, c_fro = 0.0, a_max = 0.0;
  for (const auto& cb : cmat) {
    if (cb.size() > 0) c_max = std::max(c_max, cb.cwiseAbs().maxCoeff());
    c_fro += cb.squaredNorm();
  }
  c_fro = std::sqrt(c_fro);
  for (double f : ex.a_fro) a_max = std::max(a_max, f);
  double b_scale = 0.0;
  for (int i = 0; i < m; ++i)
    b_scale = std::max(b_scale, std::abs(p.objective[i]) / (1.0 + ex.a_fro[i]));
  const double n_sqrt = std::sqrt(static_cast<double>(total_dim));

  Iterate it;
  it.y.assign(m, 0.0);
  const double xi1 = std::max({10.0, n_sqrt, n_sqrt * b_scale});
  const double xi2 = std::max({10.0, n_sqrt, 2.0 * c_max + a_max});
  for (int b = 0; b < nblocks; ++b) {
    it.x.push_back(CMatrix::Identity(p.block_dims[b], p.block_dims[b]) * xi1);
    it.s.push_back(CMatrix::Identity(p.block_dims[b], p.block_dims[b]) * xi2);
  }

  SdpSolution sol;
  std::ostringstream diag;
  auto finish = [&](SdpStatus st, double pobj, double dobj) {
    sol.status = st;
    sol.primal_value = -dobj;
    sol.dual_value = -pobj;
    sol.duality_gap = std::max(0.0, sol.primal_value - sol.dual_value);
    sol.primal_blocks = it.s;
    sol.dual_blocks = it.x;
    sol.y.resize(m);
    for (int i = 0; i < m; ++i) sol.y[i] = -it.y[i];
    sol.diagnostics = diag.str();
    return sol;
  };

  double best_merit = std::numeric_limits<double>::infinity();
  int stall = 0;
  double pobj = 0.0, dobj = 0.0;

  // Best iterate seen, kept so a late stall can still return a certified
  // near-optimal point instead of failing outright.
  struct Snapshot {
    std::vector<CMatrix> x, s;
    std::vector<double> y;
    double pobj = 0.0, dobj = 0.0;
    double merit = std::numeric_limits<double>::infinity();
  } snap;
  // A stall within this factor of the requested tolerances is still a
  // usable optimum; the returned duality_gap reports what was achieved.
  const double near_accept = 1e3 * std::max(gap_tol, feas_tol);
  auto finish_best = [&](SdpStatus st) {
    if (snap.merit <= near_accept) {
      it.x = snap.x;
      it.s = snap.s;
      it.y = snap.y;
      diag << "accepted near-optimal iterate with merit " << snap.merit
           << "\n";
      return finish(SdpStatus::optimal, snap.pobj, snap.dobj);
    }
    return finish(st, pobj, dobj);
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    sol.iterations = iter;
    // Residuals.
    pobj = 0.0;
    for (int b = 0; b < nblocks; ++b)
      pobj += (cmat[b].adjoint() * it.x[b]).trace().real();
    dobj = 0.0;
    for (int i = 0; i < m; ++i) dobj += p.objective[i] * it.y[i];
    std::vector<double> rp(m);
    double rp_inf = 0.0;
    for (int i = 0; i < m; ++i) {
      rp[i] = p.objective[i] - sparse_dot(ex.cons[i], it.x);
      rp_inf = std::max(rp_inf, std::abs(rp[i]));
    }
    std::vector<CMatrix> rd(nblocks);
    double rd_max = 0.0;
    for (int b = 0; b < nblocks; ++b) {
      rd[b] = cmat[b] - it.s[b];
      for (int i = 0; i < m; ++i)
        for (const Entry& e : ex.cons[i][b])
          rd[b](e.row, e.col) -= it.y[i] * e.value;
      rd[b] = hermitize(rd[b]);
      if (rd[b].size() > 0)
        rd_max = std::max(rd_max, rd[b].cwiseAbs().maxCoeff());
    }
    double gap = 0.0;
    for (int b = 0; b < nblocks; ++b)
      gap += (it.x[b] * it.s[b]).trace().real();
    const double mu = gap / total_dim;
    double b_inf = 0.0;
    for (int i = 0; i < m; ++i)
      b_inf = std::max(b_inf, std::abs(p.objective[i]));
    const double pfeas = rp_inf / (1.0 + b_inf);
    const double dfeas = rd_max / (1.0 + c_max);
    const double obj_scale = std::max(1.0, (std::abs(pobj) + std::abs(dobj)) / 2.0);
    const double relgap = std::abs(pobj - dobj) / obj_scale;

    if (relgap <= gap_tol && pfeas <= feas_tol && dfeas <= feas_tol)
      return finish(SdpStatus::optimal, pobj, dobj);

    // Farkas-style infeasibility screen: (P) objective diverging along a
    // nearly feasible recession direction certifies LMI infeasibility.
    if (pobj < -1e10 * std::max(1.0, c_fro)) {
      double tr = 0.0;
      for (const auto& xb : it.x) tr += xb.trace().real();
      double viol = 0.0;
      for (int i = 0; i < m; ++i)
        viol = std::max(viol, std::abs(sparse_dot(ex.cons[i], it.x)) / tr);
      double cdir = 0.0;
      for (int b = 0; b < nblocks; ++b)
        cdir += (cmat[b].adjoint() * it.x[b]).trace().real() / tr;
      if (viol <= 1e-6 && cdir < -1e-6) {
        diag << "recession direction with <F_i,X>/tr(X) <= " << viol
             << " and <F0,X>/tr(X) = " << cdir << "\n";
        return finish(SdpStatus::infeasible, pobj, dobj);
      }
    }

    static const bool trace = std::getenv("FGM_SDP_TRACE") != nullptr;
    if (trace)
      std::fprintf(stderr,
                   "sdp iter %3d relgap %.3e pfeas %.3e dfeas %.3e mu %.3e\n",
                   iter, relgap, pfeas, dfeas, mu);

    const double merit = std::max({relgap, pfeas, dfeas});
    if (merit < snap.merit) {
      snap.x = it.x;
      snap.s = it.s;
      snap.y = it.y;
      snap.pobj = pobj;
      snap.dobj = dobj;
      snap.merit = merit;
    }
    if (merit < 0.9 * best_merit) {
      best_merit = merit;
      stall = 0;
    } else if (++stall > 25) {
      diag << "stalled at relgap=" << relgap << " pfeas=" << pfeas
           << " dfeas=" << dfeas << "\n";
      return finish_best(SdpStatus::max_iterations);
    }

    // Factorizations and the NT scaling point W (W S W = X) per block.
    std::vector<Eigen::LLT<CMatrix>> llt_x(nblocks), llt_s(nblocks);
    std::vector<CMatrix> w(nblocks), s_inv(nblocks);
    bool factor_ok = true;
    for (int b = 0; b < nblocks && factor_ok; ++b) {
      llt_x[b].compute(it.x[b]);
      llt_s[b].compute(it.s[b]);
      if (llt_x[b].info() != Eigen::Success ||
          llt_s[b].info() != Eigen::Success) {
        factor_ok = false;
        break;
      }
      CMatrix xr, xir;
      sqrt_pair(it.x[b], xr, xir);
      CMatrix kr, kir;
      sqrt_pair(xr * it.s[b] * xr, kr, kir);
      w[b] = xr * kir * xr;
      s_inv[b] = llt_s[b].solve(
          CMatrix::Identity(p.block_dims[b], p.block_dims[b]));
      s_inv[b] = hermitize(s_inv[b]);
    }
    if (!factor_ok) {
      diag << "Cholesky breakdown on iterate " << iter << "\n";
      return finish_best(SdpStatus::max_iterations);
    }

    // Schur complement M_ij = sum_blocks <A_i, W A_j W> by the entry pair
    // formula <E_ab W E_cd W> -> W(b,c) W(d,a).
    RMatrix schur = RMatrix::Zero(m, m);
    for (int b = 0; b < nblocks; ++b) {
      const CMatrix& wb = w[b];
      for (int i = 0; i < m; ++i) {
        const auto& ti = ex.cons[i][b];
        if (ti.empty()) continue;
        for (int j = i; j < m; ++j) {
          const auto& tj = ex.cons[j][b];
          if (tj.empty()) continue;
          cplx acc{0.0, 0.0};
          for (const Entry& ei : ti)
            for (const Entry& ej : tj)
              acc += ei.value * ej.value * wb(ei.col, ej.row) *
                     wb(ej.col, ei.row);
          schur(i, j) += acc.real();
        }
      }
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j) schur(i, j) = schur(j, i);
    const double ridge = 1e-14 * std::max(1.0, schur.trace() / m);
    for (int i = 0; i < m; ++i) schur(i, i) += ridge;
    Eigen::LDLT<RMatrix> schur_f(schur);
    if (schur_f.info() != Eigen::Success) {
      diag << "Schur factorization breakdown on iterate " << iter << "\n";
      return finish_best(SdpStatus::max_iterations);
    }

    // One Newton solve: target X.S -> sigma*mu*I with optional second-order
    // correction H; returns false on numerical failure.
    std::vector<CMatrix> dx(nblocks), ds(nblocks);
    std::vector<double> dy(m);
    auto newton = [&](double sigma_mu, const std::vector<CMatrix>* corr) {
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i)
        rhs(i) = p.objective[i] - sigma_mu * sparse_dot(ex.cons[i], s_inv);
      // Precompute W Rd W (+ H) once per block, then sparse-dot per row.
      std::vector<CMatrix> mid(nblocks);
      for (int b = 0; b < nblocks; ++b) {
        mid[b] = w[b] * rd[b] * w[b];
        if (corr) mid[b] += (*corr)[b];
      }
      for (int i = 0; i < m; ++i) rhs(i) += sparse_dot(ex.cons[i], mid);
      const Eigen::VectorXd dyv = schur_f.solve(rhs);
      if (!dyv.allFinite()) return false;
      for (int i = 0; i < m; ++i) dy[i] = dyv(i);
      for (int b = 0; b < nblocks; ++b) {
        ds[b] = rd[b];
        for (int i = 0; i < m; ++i)
          for (const Entry& e : ex.cons[i][b])
            ds[b](e.row, e.col) -= dy[i] * e.value;
        ds[b] = hermitize(ds[b]);
        dx[b] = sigma_mu * s_inv[b] - it.x[b] - w[b] * ds[b] * w[b];
        if (corr) dx[b] -= (*corr)[b];
        dx[b] = hermitize(dx[b]);
      }
      return true;
    };

    // Predictor (affine scaling direction).
    if (!newton(0.0, nullptr)) {
      diag << "Newton solve breakdown on iterate " << iter << "\n";
      return finish_best(SdpStatus::max_iterations);
    }
    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nblocks; ++b) {
      ap = std::min(ap, max_step(llt_x[b], dx[b], 1.0));
      ad = std::min(ad, max_step(llt_s[b], ds[b], 1.0));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nblocks; ++b)
      mu_aff += ((it.x[b] + ap * dx[b]) * (it.s[b] + ad * ds[b]))
                    .trace()
                    .real();
    mu_aff /= total_dim;
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
    sigma = std::clamp(sigma, 1e-8, 1.0);
    if (pfeas + dfeas > 10.0 * relgap) sigma = std::max(sigma, 0.2);
    // Lack of progress usually means the affine direction is too greedy
    // near a weakly complementary face; recentering restores step length.
    // (A floor above 0.5 would hold mu constant and lock the stall in.)
    if (stall >= 8) sigma = std::max(sigma, 0.5);

    // Corrector with Mehrotra second-order term H = sym(dXaff dSaff S^-1).
    std::vector<CMatrix> corr(nblocks);
    for (int b = 0; b < nblocks; ++b) {
      const CMatrix t = dx[b] * ds[b] * s_inv[b];
      corr[b] = (t + t.adjoint()) / 2.0;
    }
    std::vector<CMatrix> dx_aff = dx, ds_aff = ds;
    std::vector<double> dy_aff = dy;
    if (!newton(sigma * mu, &corr)) {
      dx = dx_aff;
      ds = ds_aff;
      dy = dy_aff;
    }

    const double gamma = 0.98;
    auto step_pair = [&](double* sp, double* sd) {
      *sp = *sd = 1.0 / gamma;
      for (int b = 0; b < nblocks; ++b) {
        *sp = std::min(*sp, max_step(llt_x[b], dx[b], 1.0 / gamma));
        *sd = std::min(*sd, max_step(llt_s[b], ds[b], 1.0 / gamma));
      }
      *sp = std::min(1.0, gamma * *sp);
      *sd = std::min(1.0, gamma * *sd);
    };
    step_pair(&ap, &ad);

    // Centrality correctors: short steps near a degenerate optimal face are
    // caused by complementarity eigenvalues straying far from sigma*mu. Push
    // the trial point's spectrum back into a box around the target (another
    // backsolve on the factorization already in hand) and keep the extra
    // correction only while it lengthens the shorter step.
    for (int round = 0; round < 3 && std::min(ap, ad) < 0.8; ++round) {
      const double apt = std::min(1.0, ap + 0.15);
      const double adt = std::min(1.0, ad + 0.15);
      const double lo = 0.1 * sigma * mu, hi = 10.0 * sigma * mu;
      std::vector<CMatrix> corr2(nblocks);
      for (int b = 0; b < nblocks; ++b) {
        CMatrix v = (it.x[b] + apt * dx[b]) * (it.s[b] + adt * ds[b]);
        v = hermitize(v);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(v);
        Eigen::VectorXd ev = es.eigenvalues();
        for (int i = 0; i < ev.size(); ++i)
          ev(i) -= std::clamp(ev(i), lo, hi);
        const CMatrix ex =
            es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        corr2[b] = corr[b] + hermitize(ex * s_inv[b]);
      }
      const std::vector<CMatrix> dx_keep = dx, ds_keep = ds;
      const std::vector<double> dy_keep = dy;
      double ap2 = 0.0, ad2 = 0.0;
      if (newton(sigma * mu, &corr2)) step_pair(&ap2, &ad2);
      if (std::min(ap2, ad2) > std::min(ap, ad) + 0.03) {
        ap = ap2;
        ad = ad2;
        corr = corr2;
      } else {
        dx = dx_keep;
        ds = ds_keep;
        dy = dy_keep;
        break;
      }
    }
    if (ap < 1e-10 && ad < 1e-10) {
      diag << "vanishing step length on iterate " << iter << "\n";
      return finish_best(SdpStatus::max_iterations);
    }
    // Keep iterates safely factorizable: shrink on Cholesky failure.
    for (int tries = 0;; ++tries) {
      bool ok = true;
      for (int b = 0; b < nblocks && ok; ++b) {
        Eigen::LLT<CMatrix> t1(it.x[b] + ap * dx[b]);
        Eigen::LLT<CMatrix> t2(it.s[b] + ad * ds[b]);
        ok = t1.info() == Eigen::Success && t2.info() == Eigen::Success;
      }
      if (ok) break;
      if (tries >= 6) {
        diag << "step rejected repeatedly on iterate " << iter << "\n";
        return finish_best(SdpStatus::max_iterations);
      }
      ap *= 0.7;
      ad *= 0.7;
    }
    for (int b = 0; b < nblocks; ++b) {
      it.x[b] = hermitize(it.x[b] + ap * dx[b]);
      it.s[b] = hermitize(it.s[b] + ad * ds[b]);
    }
    for (int i = 0; i < m; ++i) it.y[i] += ad * dy[i];
    sol.iterations = iter + 1;
  }
  diag << "iteration cap " << max_iter << " reached\n";
  return finish_best(SdpStatus::max_iterations);
}

RMatrix embed_hermitian(const CMatrix& a) {
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("embed_hermitian: input is not Hermitian");
  const Eigen::Index n = a.rows();
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a.real();
  out.topRightCorner(n, n) = -a.imag();
  out.bottomLeftCorner(n, n) = a.imag();
  out.bottomRightCorner(n, n) = a.real();
  return out;
}

std::string dump_sdp_json(const SdpProblem& p) {
  nlohmann::json j;
  j["block_dims"] = p.block_dims;
  j["objective"] = p.objective;
  auto enc = [](const std::vector<SdpTriplet>& ts) {
    auto arr = nlohmann::json::array();
    for (const SdpTriplet& t : ts)
      arr.push_back({t.block, t.row, t.col, t.value.real(), t.value.imag()});
    return arr;
  };
  j["constant"] = enc(p.constant_term);
  auto cons = nlohmann::json::array();
  for (const auto& c : p.constraints) cons.push_back(enc(c));
  j["constraints"] = cons;
  return j.dump();
}

}  // namespace fgm
