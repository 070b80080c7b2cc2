#include "ohz/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "ohz/extremal.hpp"

namespace ohz {

double ExperimentRecord::max_ratio() const {
  double best = 0.0;
  for (const TrialRow& r : rows) best = std::max(best, r.ratio);
  return best;
}

const TrialRow* ExperimentRecord::argmax() const {
  const TrialRow* best = nullptr;
  for (const TrialRow& r : rows)
    if (!best || r.ratio > best->ratio) best = &r;
  return best;
}

namespace {

void parallel_trials(int count, const std::function<void(int)>& body) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1 || count < 32) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

CMat unitary_exp(const CMat& h, double s) {
  SpectralDecomposition d = eig(h);
  CVec phases(d.dim());
  for (int i = 0; i < d.dim(); ++i) phases(i) = std::polar(1.0, s * d.eigenvalues(i));
  return d.vectors * phases.asDiagonal() * d.vectors.adjoint();
}

double op_norm(const CMat& x) { return spectral_norm(x); }

struct TrialInputs {
  CMat x1, x2, r;
  double delta = 0.0;
  int dim = 0;
};

// numerator, denominator and sampling for one inequality tag
struct TagImpl {
  std::function<TrialInputs(Rng&, int, double)> sample;
  std::function<std::pair<double, double>(const TrialInputs&)> evaluate;
  bool has_perturb = false;
  std::function<TrialInputs(Rng&, const TrialInputs&, double)> perturb;
};

struct TagContext {
  TagContext(FunctionModel fn, RatioParams p, OperatorSampler s)
      : f(std::move(fn)), params(std::move(p)), sampler(s) {}
  FunctionModel f;
  RatioParams params;
  OperatorSampler sampler;
  double seminorm = 0.0;
  ModulusOfContinuity omega = ModulusOfContinuity::power(0.5);
  bool has_omega = false;
  int star_order = 1;  // m used inside omega_{*,m}
  std::map<double, double> omega_star_cache;  // per delta, order star_order
  std::map<double, double> modulus_cache;     // f's own modulus per delta (fan)
};

double cached_omega_star(TagContext& ctx, double x) {
  auto it = ctx.omega_star_cache.find(x);
  if (it != ctx.omega_star_cache.end()) return it->second;
  double v = omega_star(ctx.omega, ctx.star_order, x);
  ctx.omega_star_cache[x] = v;
  return v;
}

CMat resample_direction_herm(Rng& rng, const OperatorSampler& s, const CMat& base, double step,
                             int dim) {
  CMat nudged = base + step * s.hermitian_direction(rng, dim);
  double n = spectral_norm(nudged);
  return n > 1e-14 ? CMat(nudged / n) : base;
}

TagImpl make_tag(const std::string& tag, std::shared_ptr<TagContext> ctx) {
  TagImpl impl;
  const OperatorSampler& S = ctx->sampler;

  auto herm_pair = [ctx, &S](Rng& rng, int dim, double delta) {
    TrialInputs in;
    in.dim = dim;
    in.delta = delta;
    in.x1 = S.hermitian(rng, dim);
    in.x2 = in.x1 + delta * S.hermitian_direction(rng, dim);
    return in;
  };
  auto herm_pair_perturb = [ctx, &S](Rng& rng, const TrialInputs& in, double step) {
    TrialInputs out = in;
    CMat k = in.x2 - in.x1;
    out.x1 = in.x1 + step * S.hermitian_direction(rng, in.dim);
    double capn = spectral_norm(out.x1);
    if (capn > ctx->sampler.spectrum_halfwidth) out.x1 *= ctx->sampler.spectrum_halfwidth / capn;
    CMat k2 = resample_direction_herm(rng, S, k / in.delta, step, in.dim);
    out.x2 = out.x1 + in.delta * k2;
    return out;
  };
  auto unitary_pair = [&S](Rng& rng, int dim, double delta) {
    TrialInputs in;
    in.dim = dim;
    in.delta = delta;
    in.x1 = S.unitary(rng, dim);
    CMat h = S.hermitian_direction(rng, dim);
    double s = 2.0 * std::asin(std::min(1.0, delta / 2.0));
    in.x2 = unitary_exp(h, s) * in.x1;
    return in;
  };
  auto unitary_pair_perturb = [&S](Rng& rng, const TrialInputs& in, double step) {
    TrialInputs out = in;
    CMat g = step * S.hermitian_direction(rng, in.dim);
    CMat rot = unitary_exp(g, 1.0);
    out.x1 = rot * in.x1;
    CMat h = S.hermitian_direction(rng, in.dim);
    double s = 2.0 * std::asin(std::min(1.0, in.delta / 2.0));
    out.x2 = unitary_exp(h, s) * out.x1;
    return out;
  };
  auto contraction_pair = [&S](Rng& rng, int dim, double delta) {
    TrialInputs in;
    in.dim = dim;
    in.delta = delta;
    OperatorSampler s2 = S;
    s2.contraction_norm = std::min(0.9, 1.0 - delta - 1e-3);
    if (s2.contraction_norm <= 0.0) throw DomainError("contraction tag: delta too large");
    in.x1 = s2.contraction(rng, dim);
    in.x2 = in.x1 + delta * S.direction(rng, dim);
    return in;
  };
  auto contraction_pair_perturb = [&S](Rng& rng, const TrialInputs& in, double step) {
    TrialInputs out = in;
    CMat t = in.x1 + step * S.direction(rng, in.dim);
    double margin = 1.0 - in.delta - 1e-3;
    double n = spectral_norm(t);
    if (n > margin) t *= margin / n;
    out.x1 = t;
    CMat d = (in.x2 - in.x1) / in.delta;
    CMat d2 = d + step * S.direction(rng, in.dim);
    double dn = spectral_norm(d2);
    if (dn > 1e-14) d2 /= dn;
    out.x2 = out.x1 + in.delta * d2;
    return out;
  };

  auto fit = [](double num, double den) { return std::make_pair(num, den); };

  if (tag == "saH" || tag == "omsa") {
    impl.sample = herm_pair;
    impl.perturb = herm_pair_perturb;
    impl.has_perturb = true;
    bool omega_flavour = (tag == "omsa");
    impl.evaluate = [ctx, omega_flavour, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      double num = op_norm(func_of(in.x1, sp->f) - func_of(in.x2, sp->f));
      double den = omega_flavour
                       ? sp->seminorm * cached_omega_star(*sp, in.delta)
                       : sp->seminorm * std::pow(in.delta, sp->params.alpha);
      return fit(num, den);
    };
  } else if (tag == "sam" || tag == "oon") {
    impl.sample = [herm_pair, &S](Rng& rng, int dim, double delta) {
      TrialInputs in;
      in.dim = dim;
      in.delta = delta;
      in.x1 = S.hermitian(rng, dim);
      in.x2 = delta * S.hermitian_direction(rng, dim);  // x2 holds K
      return in;
    };
    impl.has_perturb = true;
    impl.perturb = [ctx, &S](Rng& rng, const TrialInputs& in, double step) {
      TrialInputs out = in;
      out.x1 = in.x1 + step * S.hermitian_direction(rng, in.dim);
      double capn = spectral_norm(out.x1);
      if (capn > ctx->sampler.spectrum_halfwidth) out.x1 *= ctx->sampler.spectrum_halfwidth / capn;
      out.x2 = in.delta * resample_direction_herm(rng, S, in.x2 / in.delta, step, in.dim);
      return out;
    };
    bool omega_flavour = (tag == "oon");
    impl.evaluate = [ctx, omega_flavour, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      double num = op_norm(op_finite_diff(sp->f, in.x1, in.x2, sp->params.m));
      double den = omega_flavour
                       ? sp->seminorm * cached_omega_star(*sp, in.delta)
                       : sp->seminorm * std::pow(in.delta, sp->params.alpha);
      return fit(num, den);
    };
  } else if (tag == "uH" || tag == "omu" || tag == "oLu") {
    impl.sample = unitary_pair;
    impl.perturb = unitary_pair_perturb;
    impl.has_perturb = true;
    impl.evaluate = [ctx, tag, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      double num = op_norm(func_of_unitary(in.x1, sp->f) - func_of_unitary(in.x2, sp->f));
      double dist = op_norm(in.x1 - in.x2);
      double den;
      if (tag == "omu")
        den = sp->seminorm * cached_omega_star(*sp, in.delta);
      else if (tag == "oLu")
        den = sp->seminorm * (2.0 + std::log2(1.0 / dist)) * dist;
      else
        den = sp->seminorm * std::pow(in.delta, sp->params.alpha);
      return fit(num, den);
    };
  } else if (tag == "hou") {
    impl.sample = [&S](Rng& rng, int dim, double delta) {
      TrialInputs in;
      in.dim = dim;
      in.delta = delta;
      in.x1 = S.unitary(rng, dim);
      in.x2 = delta * S.hermitian_direction(rng, dim);  // x2 holds A with ||A|| = delta
      return in;
    };
    impl.evaluate = [ctx, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      const int m = sp->params.m;
      CMat acc = CMat::Zero(in.dim, in.dim);
      for (int k = 0; k <= m; ++k) {
        double sign = (k % 2) ? -1.0 : 1.0;
        CMat uk = unitary_exp(in.x2, static_cast<double>(k)) * in.x1;
        acc += sign * static_cast<double>(binomial(m, k)) * func_of_unitary(uk, sp->f);
      }
      double den = sp->seminorm * std::pow(in.delta, sp->params.alpha);
      return fit(op_norm(acc), den);
    };
  } else if (tag == "cH" || tag == "omc" || tag == "oLc") {
    impl.sample = contraction_pair;
    impl.perturb = contraction_pair_perturb;
    impl.has_perturb = true;
    impl.evaluate = [ctx, tag, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      double num = op_norm(poly_func_of(in.x1, sp->f) - poly_func_of(in.x2, sp->f));
      double dist = op_norm(in.x1 - in.x2);
      double den;
      if (tag == "omc")
        den = sp->seminorm * cached_omega_star(*sp, in.delta);
      else if (tag == "oLc")
        den = sp->seminorm * (2.0 + std::log2(1.0 / dist)) * dist;
      else
        den = sp->seminorm * std::pow(in.delta, sp->params.alpha);
      return fit(num, den);
    };
  } else if (tag == "conh") {
    impl.sample = contraction_pair;
    impl.evaluate = [ctx, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      const int m = sp->params.m;
      CMat acc = CMat::Zero(in.dim, in.dim);
      for (int k = 0; k <= m; ++k) {
        double sign = (k % 2) ? -1.0 : 1.0;
        CMat point = in.x1 + (static_cast<double>(k) / m) * (in.x2 - in.x1);
        acc += sign * static_cast<double>(binomial(m, k)) * poly_func_of(point, sp->f);
      }
      double den = sp->seminorm * std::pow(in.delta, sp->params.alpha);
      return fit(op_norm(acc), den);
    };
  } else if (tag == "fcc" || tag == "oqc") {
    impl.sample = [&S](Rng& rng, int dim, double delta) {
      TrialInputs in;
      in.dim = dim;
      in.delta = delta;
      in.x1 = S.hermitian(rng, dim);
      in.x2 = in.x1 + delta * S.hermitian_direction(rng, dim);
      in.r = S.direction(rng, dim);
      return in;
    };
    impl.has_perturb = true;
    impl.perturb = [ctx, &S](Rng& rng, const TrialInputs& in, double step) {
      TrialInputs out = in;
      out.x1 = in.x1 + step * S.hermitian_direction(rng, in.dim);
      out.x2 = in.x2 + step * S.hermitian_direction(rng, in.dim);
      out.r = in.r + step * S.direction(rng, in.dim);
      double n = spectral_norm(out.r);
      if (n > 1e-14) out.r /= n;
      return out;
    };
    bool quasi_omega = (tag == "oqc");
    impl.evaluate = [ctx, quasi_omega, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      CMat fa = func_of(in.x1, sp->f);
      CMat fb = func_of(in.x2, sp->f);
      double num = op_norm(fa * in.r - in.r * fb);
      double cross = op_norm(in.x1 * in.r - in.r * in.x2);
      double rn = op_norm(in.r);
      double den;
      if (quasi_omega)
        den = cross > 0.0 ? sp->seminorm * rn * omega_star(sp->omega, 1, cross / rn) : 0.0;
      else
        den = sp->seminorm * std::pow(cross, sp->params.alpha) * std::pow(rn, 1.0 - sp->params.alpha);
      return fit(num, den);
    };
  } else if (tag == "lip" || tag == "fan") {
    impl.sample = herm_pair;
    bool lipschitz = (tag == "lip");
    impl.evaluate = [ctx, lipschitz, fit](const TrialInputs& in) {
      auto sp = ctx.get();
      double num = op_norm(func_of(in.x1, sp->f) - func_of(in.x2, sp->f));
      SpectralDecomposition d1 = eig(in.x1);
      SpectralDecomposition d2 = eig(in.x2);
      double lo = std::min(d1.eigenvalues(0), d2.eigenvalues(0));
      double hi = std::max(d1.eigenvalues(in.dim - 1), d2.eigenvalues(in.dim - 1));
      double logf = std::log((hi - lo) / in.delta + 1.0);
      double den;
      if (lipschitz) {
        den = sp->seminorm * logf * in.delta;
      } else {
        auto it = sp->modulus_cache.find(in.delta);
        double om_f;
        if (it != sp->modulus_cache.end()) {
          om_f = it->second;
        } else {
          om_f = modulus_of_function(sp->f, 1, in.delta, sp->params.grid);
          sp->modulus_cache[in.delta] = om_f;
        }
        den = logf * om_f;
      }
      return fit(num, den);
    };
  } else {
    throw DomainError("ratio_experiment: unknown tag '" + tag + "'");
  }
  return impl;
}

std::shared_ptr<TagContext> make_context(const std::string& tag, const FunctionModel& f,
                                         const RatioParams& params,
                                         const OperatorSampler& sampler) {
  auto ctx = std::make_shared<TagContext>(f, params, sampler);
  if (!params.omega.empty()) ctx->omega = ModulusOfContinuity::from_id(params.omega);
  if (tag == "omsa" || tag == "omu" || tag == "omc" || tag == "oqc" || tag == "oon") {
    ctx->has_omega = true;
    ctx->star_order = (tag == "oon") ? params.m : 1;
  }
  // seminorm denominators, computed once over the declared grid
  if (tag == "omsa" || tag == "omu" || tag == "omc" || tag == "oqc") {
    ctx->seminorm = lambda_omega_norm(f, ctx->omega, 1, params.grid).value;
  } else if (tag == "oon") {
    ctx->seminorm = lambda_omega_norm(f, ctx->omega, params.m, params.grid).value;
  } else if (tag == "saH" || tag == "uH" || tag == "cH" || tag == "fcc") {
    ctx->seminorm =
        lambda_omega_norm(f, ModulusOfContinuity::power(params.alpha), 1, params.grid).value;
  } else if (tag == "sam" || tag == "hou" || tag == "conh") {
    ctx->seminorm =
        lambda_omega_norm(f, ModulusOfContinuity::power(params.alpha), params.m, params.grid)
            .value;
  } else if (tag == "oLu" || tag == "oLc") {
    ctx->seminorm = lambda_omega_norm(f, ModulusOfContinuity::power(1.0), 2, params.grid).value;
  } else if (tag == "lip") {
    ctx->seminorm = lambda_omega_norm(f, ModulusOfContinuity::power(1.0), 1, params.grid).value;
  } else if (tag == "fan") {
    ctx->seminorm = 1.0;  // the fan denominator carries f's own modulus instead
  }
  return ctx;
}

}  // namespace

ExperimentRecord ratio_experiment(const std::string& tag, const FunctionModel& f,
                                  const RatioParams& params, const OperatorSampler& sampler,
                                  int trials, uint64_t seed) {
  auto ctx = make_context(tag, f, params, sampler);
  TagImpl impl = make_tag(tag, ctx);

  ExperimentRecord rec;
  rec.tag = tag;
  rec.function_id = f.id();
  rec.omega_id = params.omega;
  rec.alpha = params.alpha;
  rec.m = params.m;
  rec.dims = params.dims;
  rec.trials = trials;
  rec.seed = seed;
  rec.seminorm_grid = params.grid;
  rec.rows.resize(static_cast<size_t>(trials));

  // warm the omega_* cache single-threaded
  if (ctx->has_omega)
    for (double d : params.deltas) cached_omega_star(*ctx, d);
  if (tag == "fan")
    for (double d : params.deltas)
      ctx->modulus_cache[d] = modulus_of_function(f, 1, d, params.grid);

  parallel_trials(trials, [&](int t) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(t));
    int dim = params.dims[static_cast<size_t>(t) % params.dims.size()];
    double delta =
        params.deltas[(static_cast<size_t>(t) / params.dims.size()) % params.deltas.size()];
    TrialInputs in = impl.sample(rng, dim, delta);
    auto [num, den] = impl.evaluate(in);
    TrialRow row;
    row.trial = t;
    row.dim = dim;
    row.delta = in.delta;
    row.numerator = num;
    row.denominator = den;
    row.ratio = den > 0.0 ? num / den : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rec.rows[static_cast<size_t>(t)] = row;
  });

  for (const TrialRow& r : rec.rows)
    if (!std::isfinite(r.ratio)) ++rec.violations;
  return rec;
}

ExperimentRecord ratio_ascent(const std::string& tag, const FunctionModel& f,
                              const RatioParams& params, const OperatorSampler& sampler, int runs,
                              int iters, uint64_t seed) {
  auto ctx = make_context(tag, f, params, sampler);
  TagImpl impl = make_tag(tag, ctx);
  if (!impl.has_perturb) throw DomainError("ratio_ascent: tag has no perturbation scheme");

  ExperimentRecord rec;
  rec.tag = tag + ":ascent";
  rec.function_id = f.id();
  rec.omega_id = params.omega;
  rec.alpha = params.alpha;
  rec.m = params.m;
  rec.dims = params.dims;
  rec.trials = runs;
  rec.seed = seed;
  rec.rows.resize(static_cast<size_t>(runs));
  if (ctx->has_omega)
    for (double d : params.deltas) cached_omega_star(*ctx, d);

  parallel_trials(runs, [&](int t) {
    Rng rng = Rng::stream(seed ^ 0xa5cedULL, static_cast<uint64_t>(t));
    int dim = params.dims[static_cast<size_t>(t) % params.dims.size()];
    double delta =
        params.deltas[(static_cast<size_t>(t) / params.dims.size()) % params.deltas.size()];
    TrialInputs cur = impl.sample(rng, dim, delta);
    auto [num, den] = impl.evaluate(cur);
    double best = den > 0.0 ? num / den : 0.0;
    double step = 0.3;
    for (int it = 0; it < iters; ++it) {
      TrialInputs cand = impl.perturb(rng, cur, step);
      auto [n2, d2] = impl.evaluate(cand);
      double r2 = d2 > 0.0 ? n2 / d2 : 0.0;
      if (r2 > best) {
        best = r2;
        cur = cand;
      } else {
        step *= 0.9;
        if (step < 1e-4) break;
      }
    }
    TrialRow row;
    row.trial = t;
    row.dim = dim;
    row.delta = delta;
    row.ratio = best;
    auto [fn, fd] = impl.evaluate(cur);
    row.numerator = fn;
    row.denominator = fd;
    rec.rows[static_cast<size_t>(t)] = row;
  });
  return rec;
}

ExperimentRecord bks_check(const OperatorSampler& sampler, double alpha, int trials,
                           const std::vector<int>& dims, uint64_t seed) {
  if (alpha <= 0.0 || alpha >= 1.0) throw DomainError("bks_check: alpha must be in (0, 1)");
  ExperimentRecord rec;
  rec.tag = "bks";
  rec.alpha = alpha;
  rec.dims = dims;
  rec.trials = trials;
  rec.seed = seed;
  rec.function_id = "abs_power:" + std::to_string(alpha);
  rec.rows.resize(static_cast<size_t>(trials));
  FunctionModel f = FunctionModel::abs_power(alpha);

  parallel_trials(trials, [&](int t) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(t));
    int dim = dims[static_cast<size_t>(t) % dims.size()];
    CMat a = sampler.psd(rng, dim);
    CMat b = sampler.psd(rng, dim);
    double dist = spectral_norm(a - b);
    double num = spectral_norm(func_of(a, f) - func_of(b, f));
    TrialRow row;
    row.trial = t;
    row.dim = dim;
    row.delta = dist;
    row.numerator = num;
    row.denominator = std::pow(dist, alpha);
    row.ratio = dist > 0.0 ? num / row.denominator : 0.0;  // 0/0 convention
    rec.rows[static_cast<size_t>(t)] = row;
  });

  for (const TrialRow& r : rec.rows) {
    if (r.ratio > 1.0 + 1e-10) {
      ++rec.violations;
      std::ostringstream os;
      os << "bks violation at trial " << r.trial << ": ratio " << r.ratio;
      rec.note = os.str();
    }
  }
  return rec;
}

DiscreteMeasure DiscreteMeasure::point_mass(double a) {
  DiscreteMeasure nu;
  nu.order = 0;
  nu.atoms.push_back({1.0, 0.0, a});
  return nu;
}

DiscreteMeasure DiscreteMeasure::difference_atom(int m) {
  DiscreteMeasure nu;
  nu.order = m;
  nu.atoms.push_back({1.0, 1.0, 0.0});
  return nu;
}

CMat measure_average(const FunctionModel& f, const CMat& a, const CMat& k,
                     const DiscreteMeasure& nu) {
  CMat acc = CMat::Zero(a.rows(), a.cols());
  const int m = nu.order;
  for (const auto& atom : nu.atoms) {
    for (int j = 0; j <= m; ++j) {
      double sign = ((m - j) % 2) ? -1.0 : 1.0;
      double t = atom.a + j * atom.h;
      acc += atom.weight * sign * static_cast<double>(binomial(m, j)) * func_of(a - t * k, f);
    }
  }
  return acc;
}

ExponentFit exponent_fit(const ExperimentRecord& record) {
  std::vector<std::pair<double, double>> pts;
  for (const TrialRow& r : record.rows)
    if (r.delta > 0.0 && r.numerator > 0.0)
      pts.push_back({std::log(r.delta), std::log(r.numerator)});
  if (pts.size() < 2) throw DomainError("exponent_fit: degenerate sweep");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double n = static_cast<double>(pts.size());
  double cov = sxy - sx * sy / n;
  double varx = sxx - sx * sx / n;
  double vary = syy - sy * sy / n;
  if (varx <= 0.0) throw DomainError("exponent_fit: degenerate sweep");
  ExponentFit fit;
  fit.slope = cov / varx;
  fit.r2 = vary > 0.0 ? cov * cov / (varx * vary) : 1.0;
  return fit;
}

ExperimentRecord exponent_sweep(const FunctionModel& f, const std::vector<double>& deltas,
                                int dim, int trials, const OperatorSampler& sampler,
                                uint64_t seed) {
  ExperimentRecord rec;
  rec.tag = "exponent";
  rec.function_id = f.id();
  rec.dims = {dim};
  rec.trials = trials;
  rec.seed = seed;
  rec.rows.resize(static_cast<size_t>(trials) * deltas.size());

  parallel_trials(trials, [&](int t) {
    Rng rng = Rng::stream(seed, static_cast<uint64_t>(t));
    CMat a = sampler.hermitian(rng, dim);
    CMat k0;
    if (dim == 1) {
      a = CMat::Zero(1, 1);
      k0 = CMat::Identity(1, 1);
    } else {
      // pin a middle eigenvalue at 0 and bias the direction towards its
      // eigenvector so a |t|^alpha kink stays active across the sweep
      SpectralDecomposition d = eig(a);
      int mid = dim / 2;
      a = a - d.eigenvalues(mid) * CMat::Identity(dim, dim);
      CVec u = d.vectors.col(mid);
      k0 = 0.25 * sampler.hermitian_direction(rng, dim) + u * u.adjoint();
      k0 /= spectral_norm(k0);
    }
    for (size_t di = 0; di < deltas.size(); ++di) {
      double delta = deltas[di];
      double num = spectral_norm(func_of(a + delta * k0, f) - func_of(a, f));
      TrialRow row;
      row.trial = t;
      row.dim = dim;
      row.delta = delta;
      row.numerator = num;
      row.denominator = delta;
      row.ratio = num / delta;
      rec.rows[static_cast<size_t>(t) * deltas.size() + di] = row;
    }
  });
  return rec;
}

std::vector<double> block_identity_checks(const CMat& a, const CMat& b, const CMat& r) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> out;

  // commutator reduction: A2 = diag(A, A), R2 = [[0, R], [R*, 0]]
  CMat a2 = CMat::Zero(2 * n, 2 * n);
  a2.topLeftCorner(n, n) = a;
  a2.bottomRightCorner(n, n) = a;
  CMat r2 = CMat::Zero(2 * n, 2 * n);
  r2.topRightCorner(n, n) = r;
  r2.bottomLeftCorner(n, n) = r.adjoint();
  double lhs1 = spectral_norm(a2 * r2 - r2 * a2);
  double comm = spectral_norm(a * r - r * a);
  double comm_adj = spectral_norm(a * r.adjoint() - r.adjoint() * a);
  out.push_back(std::abs(lhs1 - comm));
  out.push_back(std::abs(comm_adj - comm));

  // quasicommutator reduction: A3 = diag(A, B), B3 = diag(B, A), R3 = diag(R, R*)
  CMat a3 = CMat::Zero(2 * n, 2 * n);
  a3.topLeftCorner(n, n) = a;
  a3.bottomRightCorner(n, n) = b;
  CMat b3 = CMat::Zero(2 * n, 2 * n);
  b3.topLeftCorner(n, n) = b;
  b3.bottomRightCorner(n, n) = a;
  CMat r3 = CMat::Zero(2 * n, 2 * n);
  r3.topLeftCorner(n, n) = r;
  r3.bottomRightCorner(n, n) = r.adjoint();
  double lhs2 = spectral_norm(a3 * r3 - r3 * b3);
  double quasi = spectral_norm(a * r - r * b);
  double quasi_adj = spectral_norm(b * r.adjoint() - r.adjoint() * a);
  out.push_back(std::abs(lhs2 - quasi));
  out.push_back(std::abs(quasi_adj - quasi));
  return out;
}

TauRotationBlock tau_rotation_block(const CMat& a, const CMat& r, double tau) {
  if (tau <= 0.0 || tau >= 1.0) throw DomainError("tau_rotation_block: tau must lie in (0, 1)");
  if (!is_hermitian(r)) throw DomainError("tau_rotation_block: R must be self-adjoint");
  if (spectral_norm(r) > 1.0 + 1e-10) throw DomainError("tau_rotation_block: ||R|| must be <= 1");
  (void)a;
  const int n = static_cast<int>(r.rows());
  CMat s = psd_sqrt((CMat::Identity(n, n) - tau * tau * r * r).eval());
  TauRotationBlock out;
  out.block_unitary = CMat::Zero(2 * n, 2 * n);
  out.block_unitary.topLeftCorner(n, n) = tau * r;
  out.block_unitary.topRightCorner(n, n) = s;
  out.block_unitary.bottomLeftCorner(n, n) = -s;
  out.block_unitary.bottomRightCorner(n, n) = tau * r;
  if (!is_unitary(out.block_unitary, 1e-12))
    throw InvariantError("tau_rotation_block: block is not unitary");
  out.bound_factor = tau + tau * tau / std::sqrt(1.0 - tau * tau);
  return out;
}

ExperimentRecord abs_explorer(const std::vector<int>& dims, int budget, uint64_t seed) {
  ExperimentRecord rec;
  rec.tag = "abs_explorer";
  rec.function_id = "abs_power:1";
  rec.dims = dims;
  rec.trials = budget;
  rec.seed = seed;
  FunctionModel f = FunctionModel::abs_power(1.0);

  for (int dim : dims) {
    OmegaParams p;
    p.tag = OmegaTag::Diff;
    p.dim = dim;
    p.delta = 1.0;
    p.cap = std::ldexp(1.0, (dim + 1) / 2);  // geometric spectra need room
    p.restarts = budget;
    p.iters = 160;

    // structured warm start: interleaved +/- geometric spectrum, rank-one kick
    std::vector<OmegaEstimate> warm;
    {
      OmegaEstimate w;
      w.tag = OmegaTag::Diff;
      w.delta = p.delta;
      CMat a = CMat::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        double mag = std::ldexp(1.0, i / 2 - dim / 4);
        a(i, i) = (i % 2 ? -mag : mag);
      }
      w.a = a;
      CMat k = CMat::Zero(dim, dim);
      for (int i = 0; i + 1 < dim; ++i) k(i, i + 1) = k(i + 1, i) = 0.5;
      double kn = spectral_norm(k);
      w.second = a + (kn > 0 ? CMat(k / kn) : k);
      warm.push_back(w);
    }
    OmegaEstimate est = omega_search(f, p, seed ^ static_cast<uint64_t>(dim), &warm);
    TrialRow row;
    row.trial = dim;
    row.dim = dim;
    row.delta = est.constraint_value;
    row.numerator = est.lower_bound;
    row.denominator = est.constraint_value;
    row.ratio = est.constraint_value > 0.0 ? est.lower_bound / est.constraint_value : 0.0;
    rec.rows.push_back(row);
  }
  return rec;
}

}  // namespace ohz
