#include "rwave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rwave {

std::vector<double> assemble_bs_matrix(const Potential& V, std::size_t n_quad, double R_spec) {
  if (n_quad < 2) throw std::invalid_argument("assemble_bs_matrix: need at least 2 nodes");
  if (!(R_spec >= 50.0))
    throw std::invalid_argument("assemble_bs_matrix: R_spec must be at least 50");
  if (!V.nonnegative())
    throw std::invalid_argument("assemble_bs_matrix: potential must be sign-definite (>= 0)");

  const double dr = R_spec / static_cast<double>(n_quad);
  std::vector<double> r(n_quad), sq(n_quad);
  for (std::size_t i = 0; i < n_quad; ++i) {
    r[i] = (static_cast<double>(i) + 0.5) * dr;
    const double vi = V(r[i]);
    if (vi < 0.0)
      throw std::invalid_argument("assemble_bs_matrix: potential sample is negative");
    sq[i] = std::sqrt(vi);
  }
  std::vector<double> A(n_quad * n_quad);
  for (std::size_t i = 0; i < n_quad; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      // r s / max(r, s) == min(r, s); with j <= i the minimum is r[j].
      const double k = sq[i] * sq[j] * r[j] * dr;
      A[i * n_quad + j] = k;
      A[j * n_quad + i] = k;
    }
  }
  return A;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> A, std::size_t n, double tol,
                                       int sweep_cap, bool* converged, double* off_final) {
  if (A.size() != n * n) throw std::invalid_argument("jacobi_eigenvalues: size mismatch");
  auto at = [&A, n](std::size_t i, std::size_t j) -> double& { return A[i * n + j]; };

  double scale = 0.0;
  for (double x : A) scale = std::max(scale, std::abs(x));
  const double stop = tol * std::max(1.0, scale);

  bool ok = false;
  double largest = 0.0;
  for (int sweep = 0; sweep < sweep_cap; ++sweep) {
    largest = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        largest = std::max(largest, std::abs(apq));
        if (std::abs(apq) <= stop) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, at(q, q) - at(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
    if (largest <= stop) {
      ok = true;
      break;
    }
  }
  if (converged) *converged = ok;
  if (off_final) {
    double worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) worst = std::max(worst, std::abs(at(p, q)));
    *off_final = worst;
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

SpectrumResult bs_spectrum(const Potential& V, const SpectrumOptions& opt) {
  SpectrumResult out;
  out.n_quad = opt.n_quad;
  out.R_spec = opt.R_spec;
  out.tail_bound =
      y_norm(V) * std::pow(opt.R_spec, 2.0 - V.beta()) / std::max(V.beta() - 2.0, 1e-12);

  std::vector<double> A = assemble_bs_matrix(V, opt.n_quad, opt.R_spec);
  std::vector<double> eig =
      jacobi_eigenvalues(std::move(A), opt.n_quad, opt.jacobi_tol, opt.sweep_cap, &out.converged,
                         &out.off_final);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.k, 1)),
                                              eig.size());
  out.lambda.assign(eig.begin(), eig.begin() + static_cast<long>(k));
  for (double lam : out.lambda)
    if (lam > 1e-14) out.alpha.push_back(1.0 / lam);
  return out;
}

ResonanceReport resonance_check(const Potential& V, double margin, const SpectrumOptions& opt) {
  ResonanceReport rep;
  rep.margin = margin;
  SpectrumResult s = bs_spectrum(V, opt);
  double dist = 1.0;  // the zero operator has spectrum {0}
  for (double lam : s.lambda) dist = std::min(dist, std::abs(lam - 1.0));
  rep.distance = dist;
  rep.resonant = dist <= margin;
  return rep;
}

CrosscheckReport bifurcation_crosscheck(const Potential& V, const CensusOptions& copt,
                                        const SpectrumOptions& sopt) {
  CrosscheckReport rep;
  SpectrumResult s = bs_spectrum(V, sopt);
  if (s.alpha.size() < 2)
    throw std::runtime_error("bifurcation_crosscheck: fewer than two positive eigenvalues");
  rep.lambda1 = s.lambda[0];
  rep.lambda2 = s.lambda[1];

  const double a1 = s.alpha[0], a2 = s.alpha[1];
  struct Probe {
    double alpha;
    int level;
    bool nontrivial, sign_changing;
  };
  const Probe probes[4] = {{0.9 * a1, 1, false, false},
                           {1.1 * a1, 1, true, false},
                           {0.9 * a2, 2, true, false},
                           {1.1 * a2, 2, true, true}};

  for (const Probe& p : probes) {
    CrosscheckEntry e;
    e.alpha = p.alpha;
    e.level = p.level;
    e.expect_nontrivial = p.nontrivial;
    e.expect_sign_changing = p.sign_changing;

    CensusResult c = census(Potential::scaled(p.alpha, V), copt);
    for (const SteadyState& st : c.states) {
      if (st.a <= 0.0) continue;
      e.found_nontrivial = true;
      if (st.sign_changes >= 1) e.found_sign_changing = true;
    }
    e.consistent = (e.found_nontrivial == e.expect_nontrivial) &&
                   (e.found_sign_changing == e.expect_sign_changing);
    if (p.level == 2 && p.sign_changing && !e.found_sign_changing) {
      std::ostringstream os;
      os << "expected sign-changing branch not detected at alpha=" << p.alpha
         << "; attributed to the finite detection margin of the scan (step=" << copt.step
         << ", bisect_tol=" << copt.bisect_tol << ")";
      e.note = os.str();
      e.consistent = false;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace rwave
