#include "ohz/extremal.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "ohz/experiments.hpp"

namespace ohz {

namespace {

// clip a Hermitian matrix into the spectral ball of radius rho
CMat clip_hermitian(const CMat& x, double rho) {
  SpectralDecomposition d = eig(hermitian_part(x));
  RVec lam = d.eigenvalues;
  for (int i = 0; i < lam.size(); ++i) lam(i) = std::clamp(lam(i), -rho, rho);
  return d.vectors * lam.cast<cplx>().asDiagonal() * d.vectors.adjoint();
}

CMat renorm(const CMat& x) {
  double s = spectral_norm(x);
  return s > 1e-14 ? CMat(x / s) : CMat(CMat::Identity(x.rows(), x.cols()));
}

struct Vars {
  CMat a;  // Hermitian
  CMat b;  // Hermitian (Diff: A + K; Comm3: second base)
  CMat r;  // commutator factor
};

struct Objective {
  double value = 0.0;
  CMat inner;  // matrix whose norm is the objective
};

class Problem {
 public:
  Problem(const FunctionModel& f, const OmegaParams& p) : f_(f), p_(p) {}

  Objective eval(const Vars& v) const {
    Objective o;
    switch (p_.tag) {
      case OmegaTag::Diff:
        o.inner = func_of(v.a, f_) - func_of(v.b, f_);
        break;
      case OmegaTag::Comm1:
      case OmegaTag::Comm2: {
        CMat fa = func_of(v.a, f_);
        o.inner = fa * v.r - v.r * fa;
        break;
      }
      case OmegaTag::Comm3:
        o.inner = func_of(v.a, f_) * v.r - v.r * func_of(v.b, f_);
        break;
    }
    o.value = spectral_norm(o.inner);
    return o;
  }

  double constraint(const Vars& v) const {
    switch (p_.tag) {
      case OmegaTag::Diff: return spectral_norm(v.a - v.b);
      case OmegaTag::Comm1:
      case OmegaTag::Comm2: return spectral_norm(v.a * v.r - v.r * v.a);
      case OmegaTag::Comm3: return spectral_norm(v.a * v.r - v.r * v.b);
    }
    return 0.0;
  }

  Vars project(Vars v) const {
    v.a = clip_hermitian(v.a, p_.cap);
    if (p_.tag == OmegaTag::Diff) {
      CMat k = clip_hermitian(hermitian_part(v.b - v.a), p_.delta);
      v.b = v.a + k;
    } else {
      if (p_.tag == OmegaTag::Comm1)
        v.r = renorm(hermitian_part(v.r));
      else
        v.r = renorm(v.r);
      if (p_.tag == OmegaTag::Comm3) v.b = clip_hermitian(v.b, p_.cap);
      double c = constraint(v);
      if (c > p_.delta) {
        double shrink = p_.delta / c;
        v.a = v.a * shrink;
        if (p_.tag == OmegaTag::Comm3) v.b = v.b * shrink;
      }
    }
    return v;
  }

  Vars sample(Rng& rng) const {
    OperatorSampler s;
    s.spectrum_halfwidth = p_.cap;
    Vars v;
    v.a = s.hermitian(rng, p_.dim);
    switch (p_.tag) {
      case OmegaTag::Diff:
        v.b = v.a + p_.delta * s.hermitian_direction(rng, p_.dim);
        break;
      case OmegaTag::Comm1:
        v.r = s.hermitian_direction(rng, p_.dim);
        break;
      case OmegaTag::Comm2:
        v.r = s.direction(rng, p_.dim);
        break;
      case OmegaTag::Comm3:
        v.b = s.hermitian(rng, p_.dim);
        v.r = s.direction(rng, p_.dim);
        break;
    }
    return project(v);
  }

  // subgradient step; falls back to a random nudge when derivative data is
  // unavailable (nonsmooth symbol at a confluent pair)
  Vars ascend(const Vars& v, const Objective& o, double step, Rng& rng) const {
    Vars g;
    g.a = CMat::Zero(v.a.rows(), v.a.cols());
    g.b = g.a;
    g.r = g.a;
    try {
      Eigen::JacobiSVD<CMat> svd(o.inner, Eigen::ComputeThinU | Eigen::ComputeThinV);
      CMat w = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
      switch (p_.tag) {
        case OmegaTag::Diff: {
          // inner = f(A) - f(B): grad_A = herm(Df_A[W]), grad_B = -herm(Df_B[W])
          g.a = hermitian_part(frechet_derivative(f_, v.a, w));
          g.b = -hermitian_part(frechet_derivative(f_, v.b, w));
          break;
        }
        case OmegaTag::Comm1:
        case OmegaTag::Comm2: {
          CMat fa = func_of(v.a, f_);
          CMat m = w * v.r.adjoint() - v.r.adjoint() * w;
          g.a = hermitian_part(frechet_derivative(f_, v.a, m));
          g.r = fa.adjoint() * w - w * fa.adjoint();
          if (p_.tag == OmegaTag::Comm1) g.r = hermitian_part(g.r);
          break;
        }
        case OmegaTag::Comm3: {
          CMat fa = func_of(v.a, f_);
          CMat fb = func_of(v.b, f_);
          g.a = hermitian_part(frechet_derivative(f_, v.a, w * v.r.adjoint()));
          g.b = hermitian_part(frechet_derivative(f_, v.b, -(v.r.adjoint() * w)));
          g.r = fa.adjoint() * w - w * fb.adjoint();
          break;
        }
      }
    } catch (const DomainError&) {
      OperatorSampler s;
      g.a = s.hermitian_direction(rng, p_.dim) * 0.5;
      g.b = s.hermitian_direction(rng, p_.dim) * 0.5;
      g.r = s.direction(rng, p_.dim) * 0.5;
    }
    auto nudge = [&](const CMat& x, const CMat& grad) -> CMat {
      double gn = grad.norm();
      return gn > 1e-14 ? CMat(x + (step / gn) * grad) : x;
    };
    Vars out;
    out.a = nudge(v.a, g.a);
    out.b = v.b.size() ? nudge(v.b, g.b) : v.b;
    out.r = v.r.size() ? nudge(v.r, g.r) : v.r;
    return project(out);
  }

 private:
  const FunctionModel& f_;
  OmegaParams p_;
};

// tolerant adaptor: warm starts may come from another tag or dimension, so
// missing members get neutral defaults and mismatched sizes are rejected
std::optional<Vars> vars_from_estimate(const OmegaEstimate& e, const Problem& prob,
                                       const OmegaParams& p) {
  if (!e.a.size() || e.a.rows() != p.dim) return std::nullopt;
  Vars v;
  v.a = hermitian_part(e.a);
  v.b = (e.second.size() && e.second.rows() == p.dim) ? CMat(hermitian_part(e.second)) : v.a;
  v.r = (e.r.size() && e.r.rows() == p.dim) ? e.r : CMat(CMat::Identity(p.dim, p.dim));
  if (p.tag == OmegaTag::Diff) v.r = CMat();
  if (p.tag == OmegaTag::Comm1 || p.tag == OmegaTag::Comm2) v.b = CMat();
  return prob.project(v);
}

}  // namespace

OmegaEstimate omega_search(const FunctionModel& f, const OmegaParams& params, uint64_t seed,
                           const std::vector<OmegaEstimate>* warm_starts) {
  Problem prob(f, params);
  OmegaEstimate best;
  best.delta = params.delta;
  best.tag = params.tag;
  best.restarts = params.restarts;
  best.iters = params.iters;

  auto consider = [&](const Vars& v) {
    Objective o = prob.eval(v);
    double c = prob.constraint(v);
    if (c <= params.delta + 1e-12 && o.value > best.lower_bound) {
      best.lower_bound = o.value;
      best.a = v.a;
      best.second = v.b;
      best.r = v.r;
      best.constraint_value = c;
    }
  };

  std::vector<Vars> starts;
  if (warm_starts)
    for (const OmegaEstimate& e : *warm_starts)
      if (auto v = vars_from_estimate(e, prob, params)) starts.push_back(*v);
  {
    // structured starts: a rank-one kick at the origin and a spread spectrum
    // with a rank-one perturbation; these certify the scalar witnesses
    const int n = params.dim;
    CMat e11 = CMat::Zero(n, n);
    e11(0, 0) = 1.0;
    CMat spread = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      spread(i, i) = n == 1 ? 0.0 : -params.cap + 2.0 * params.cap * i / (n - 1.0);
    Vars s1, s2;
    s1.a = std::min(params.delta, params.cap) * e11;
    s1.b = CMat::Zero(n, n);
    s2.a = spread;
    s2.b = spread - params.delta * e11;
    if (params.tag == OmegaTag::Diff) {
      starts.push_back(prob.project(s1));
      starts.push_back(prob.project(s2));
    } else {
      Vars c1;
      c1.a = spread;
      c1.r = CMat::Ones(n, n) / static_cast<double>(n);
      if (params.tag == OmegaTag::Comm3) c1.b = spread;
      starts.push_back(prob.project(c1));
    }
  }
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(r) + 1000);
    starts.push_back(prob.sample(rng));
  }

  int run_index = 0;
  for (Vars v : starts) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(run_index++) + 5000000);
    consider(v);
    double step = params.step0_frac * params.delta;
    Vars current = v;
    Objective cur_obj = prob.eval(current);
    for (int it = 0; it < params.iters; ++it) {
      Vars next = prob.ascend(current, cur_obj, step, rng);
      Objective nxt_obj = prob.eval(next);
      if (nxt_obj.value > cur_obj.value) {
        current = next;
        cur_obj = nxt_obj;
        consider(current);
      } else {
        step *= 0.7;
        if (step < 1e-8 * params.delta) break;
      }
    }
  }

  // certify: re-evaluate at the stored witness
  if (best.a.size()) {
    Vars v{best.a, best.second, best.r};
    Objective o = prob.eval(v);
    best.lower_bound = o.value;
    best.constraint_value = prob.constraint(v);
  }
  return best;
}

OmegaEstimate transfer_to_quasicommutator(const OmegaEstimate& diff_witness) {
  if (diff_witness.tag != OmegaTag::Diff) throw DomainError("transfer: expected a Diff witness");
  OmegaEstimate out = diff_witness;
  out.tag = OmegaTag::Comm3;
  out.r = CMat::Identity(diff_witness.a.rows(), diff_witness.a.cols());
  out.constraint_value = spectral_norm(diff_witness.a - diff_witness.second);
  if (out.constraint_value > out.delta + 1e-12)
    throw InvariantError("transfer: quasicommutator constraint violated");
  return out;
}

OmegaEstimate transfer_to_difference(const FunctionModel& f, const OmegaEstimate& comm_witness) {
  if (comm_witness.tag != OmegaTag::Comm1)
    throw DomainError("transfer: expected a Comm1 witness (self-adjoint R)");
  const CMat& a = comm_witness.a;
  const CMat& r = comm_witness.r;
  TauRotationBlock rot = tau_rotation_block(a, r, 0.5);
  const int n = static_cast<int>(a.rows());
  CMat big_a = CMat::Zero(2 * n, 2 * n);
  big_a.topLeftCorner(n, n) = a;
  big_a.bottomRightCorner(n, n) = a;
  CMat rotated = rot.block_unitary.adjoint() * big_a * rot.block_unitary;

  OmegaEstimate out;
  out.tag = OmegaTag::Diff;
  out.a = rotated;
  out.second = big_a;
  CMat fa = func_of(big_a, f);
  CMat frot = func_of(rotated, f);
  out.lower_bound = spectral_norm(frot - fa);
  out.constraint_value = spectral_norm(rotated - big_a);
  double comm = spectral_norm(a * r - r * a);
  out.delta = rot.bound_factor * comm;
  if (out.constraint_value > out.delta + 1e-9)
    throw InvariantError("transfer: difference constraint exceeds the rotation budget");
  return out;
}

Registry::Registry(FunctionModel f, std::vector<double> delta_grid)
    : f_(std::move(f)), deltas_(std::move(delta_grid)), maxima_(deltas_.size(), 0.0) {}

void Registry::append(const CMat& a, const CMat& b) {
  double dist = spectral_norm(a - b);
  double value = spectral_norm(func_of(hermitian_part(a), f_) - func_of(hermitian_part(b), f_));
  for (size_t i = 0; i < deltas_.size(); ++i)
    if (dist <= deltas_[i] && value > maxima_[i]) maxima_[i] = value;
  ++count_;
}

void Registry::extend(int budget) {
  for (int i = 0; i < budget; ++i) {
    long long idx = cursor_++;
    // deterministic enumeration: round rr fixes the grid denominator q = 2^rr,
    // the dimension cycles 1..4 and entries come from a splitmix expansion of
    // the index (entries on the 1/q integer grid, |entry| <= 2)
    long long rr = idx / 64 % 6 + 1;
    double q = std::ldexp(1.0, static_cast<int>(rr));
    int dim = static_cast<int>(idx % 4) + 1;
    Rng rng(static_cast<uint64_t>(idx) * 0x9e3779b97f4a7c15ULL + 17);
    auto grid_entry = [&]() {
      double v = std::floor(rng.uniform(-2.0 * q, 2.0 * q + 1.0)) / q;
      return std::clamp(v, -2.0, 2.0);
    };
    CMat a(dim, dim), b(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = r; c < dim; ++c) {
        cplx za(grid_entry(), r == c ? 0.0 : grid_entry());
        cplx zb(grid_entry(), r == c ? 0.0 : grid_entry());
        a(r, c) = za;
        a(c, r) = std::conj(za);
        b(r, c) = zb;
        b(c, r) = std::conj(zb);
      }
    append(a, b);
  }
}

ZygmundFit zygmund_fit(const FunctionModel& f, const std::vector<double>& delta_grid,
                       const OmegaParams& budget, uint64_t seed) {
  if (!f.bounded()) throw DomainError("zygmund_fit: function must be bounded");
  ZygmundFit fit;
  std::vector<OmegaEstimate> warm;
  for (double d : delta_grid) {
    if (d > 1.0) throw DomainError("zygmund_fit: delta grid must stay within (0, 1]");
    OmegaParams p = budget;
    p.delta = d;
    p.tag = OmegaTag::Diff;
    OmegaEstimate est = omega_search(f, p, seed, &warm);
    warm.push_back(est);
    fit.curve.push_back({d, est.lower_bound});
    double denom = d * std::log(2.0 / d);
    fit.c_hat = std::max(fit.c_hat, est.lower_bound / denom);
  }
  return fit;
}

}  // namespace ohz
