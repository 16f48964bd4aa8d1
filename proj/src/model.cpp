#include "cure/model/model.hpp"

#include <cmath>

#include "cure/common/error.hpp"
#include "cure/kernels/kernels.hpp"

namespace cure::model {

using linalg::Matrix;
using linalg::SymmetricMatrix;
using linalg::Vector;

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "linear_regression") return ModelKind::linear_regression;
  if (s == "logistic_regression") return ModelKind::logistic_regression;
  if (s == "mlp") return ModelKind::mlp;
  throw ConfigError("unknown model kind: " + s);
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::linear_regression: return "linear_regression";
    case ModelKind::logistic_regression: return "logistic_regression";
    case ModelKind::mlp: return "mlp";
  }
  return "?";
}

Activation activation_from_string(const std::string& s) {
  if (s == "tanh") return Activation::tanh;
  if (s == "relu") return Activation::relu;
  throw ConfigError("unknown activation: " + s);
}

std::string to_string(Activation act) {
  return act == Activation::tanh ? "tanh" : "relu";
}

std::size_t ModelSpec::param_count() const {
  const std::size_t p = input_dim;
  const std::size_t c = class_count;
  switch (kind) {
    case ModelKind::linear_regression:
    case ModelKind::logistic_regression:
      return (p + 1) * c;
    case ModelKind::mlp:
      return p * hidden_units + hidden_units + hidden_units * c + c;
  }
  return 0;
}

std::vector<ParamBlock> ModelSpec::layout() const {
  const std::size_t p = input_dim;
  const std::size_t h = hidden_units;
  const std::size_t c = class_count;
  switch (kind) {
    case ModelKind::linear_regression:
    case ModelKind::logistic_regression:
      return {{"weights", 0, p, c}, {"bias", p * c, 1, c}};
    case ModelKind::mlp:
      return {{"hidden_weights", 0, p, h},
              {"hidden_bias", p * h, 1, h},
              {"output_weights", p * h + h, h, c},
              {"output_bias", p * h + h + h * c, 1, c}};
  }
  return {};
}

void ModelSpec::validate() const {
  if (input_dim == 0) throw ConfigError("model spec: input_dim must be >= 1");
  if (kind == ModelKind::linear_regression) {
    if (class_count != 1)
      throw ConfigError("model spec: linear_regression requires class_count 1");
  } else if (class_count < 2) {
    throw ConfigError("model spec: classification requires class_count >= 2");
  }
  if (kind == ModelKind::mlp && hidden_units == 0)
    throw ConfigError("model spec: mlp requires hidden_units >= 1");
  if (l2_coeff < 0.0) throw ConfigError("model spec: l2_coeff must be >= 0");
}

bool ParamVector::all_finite() const {
  for (double x : values)
    if (!std::isfinite(x)) return false;
  return true;
}

double param_distance(const ParamVector& a, const ParamVector& b) {
  if (a.size() != b.size()) throw DimensionError("param_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

ParamVector zero_params(const ModelSpec& spec) {
  return ParamVector{Vector(spec.param_count(), 0.0)};
}

namespace {

void check_subset(const Dataset& data, IndexSpan subset, const char* op) {
  if (subset.empty())
    throw DimensionError(std::string(op) + ": empty subset");
  for (std::size_t idx : subset)
    if (idx >= data.size())
      throw DimensionError(std::string(op) + ": subset index out of range");
}

void check_params(const ModelSpec& spec, const ParamVector& w, const char* op) {
  if (w.size() != spec.param_count())
    throw DimensionError(std::string(op) + ": parameter count mismatch");
}

// Subset rows gathered into a dense matrix, optionally with a trailing
// all-ones column (the bias input).
Matrix gather(const Dataset& data, IndexSpan subset, bool augment) {
  const std::size_t m = subset.size();
  const std::size_t p = data.feature_dim();
  Matrix out(m, p + (augment ? 1 : 0));
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = data.features.row(subset[i]);
    for (std::size_t j = 0; j < p; ++j) out(i, j) = row[j];
    if (augment) out(i, p) = 1.0;
  }
  return out;
}

double regularizer(const ModelSpec& spec, const ParamVector& w) {
  if (spec.l2_coeff == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : w.values) acc += x * x;
  return 0.5 * spec.l2_coeff * acc;
}

// ---- convex models (augmented-weight layout, W is (p+1) x C row-major) ----

Matrix convex_logits(const ModelSpec& spec, const ParamVector& w,
                     const Matrix& xa) {
  const Matrix wmat(spec.input_dim + 1, spec.class_count, w.values);
  return xa.multiply(wmat);
}

Matrix softmax_rows(Matrix logits) {
  kernels::row_softmax(logits.data(), logits.rows(), logits.cols());
  return logits;
}

Vector logistic_sample_losses(const Matrix& logits, const std::vector<int>& y,
                              IndexSpan subset) {
  const std::size_t m = logits.rows();
  const std::size_t c = logits.cols();
  Vector out(m);
#pragma omp parallel for schedule(static) if (m * c > 4096)
  for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const double* row = logits.data().data() + i * c;
    double mx = row[0];
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, row[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) sum += std::exp(row[j] - mx);
    out[i] = std::log(sum) - (row[y[subset[i]]] - mx);
  }
  return out;
}

// ---- MLP forward/backward ----

struct MlpViews {
  // Offsets into the flat parameter vector.
  std::size_t w1, b1, w2, b2;
  std::size_t p, h, c;
};

MlpViews mlp_views(const ModelSpec& spec) {
  const std::size_t p = spec.input_dim, h = spec.hidden_units,
                    c = spec.class_count;
  return {0, p * h, p * h + h, p * h + h + h * c, p, h, c};
}

struct MlpForward {
  Matrix z1;      // m x h pre-activation
  Matrix a1;      // m x h activation
  Matrix probs;   // m x c softmax
  Matrix logits;  // m x c
};

MlpForward mlp_forward(const ModelSpec& spec, const ParamVector& w,
                       const Matrix& x) {
  const MlpViews v = mlp_views(spec);
  const std::size_t m = x.rows();
  const Matrix w1(v.p, v.h, Vector(w.values.begin() + v.w1,
                                   w.values.begin() + v.w1 + v.p * v.h));
  const Matrix w2(v.h, v.c, Vector(w.values.begin() + v.w2,
                                   w.values.begin() + v.w2 + v.h * v.c));
  MlpForward f;
  f.z1 = x.multiply(w1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t u = 0; u < v.h; ++u) f.z1(i, u) += w.values[v.b1 + u];
  f.a1 = f.z1;
  if (spec.activation == Activation::tanh) {
    for (double& z : f.a1.data()) z = std::tanh(z);
  } else {
    for (double& z : f.a1.data()) z = z > 0.0 ? z : 0.0;
  }
  f.logits = f.a1.multiply(w2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < v.c; ++k) f.logits(i, k) += w.values[v.b2 + k];
  f.probs = softmax_rows(f.logits);
  return f;
}

// Column sums, one output element per thread, fixed row order.
Vector col_sums(const Matrix& a) {
  Vector out(a.cols(), 0.0);
#pragma omp parallel for schedule(static) if (a.rows() * a.cols() > 4096)
  for (long long jj = 0; jj < static_cast<long long>(a.cols()); ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, j);
    out[j] = acc;
  }
  return out;
}

ParamVector mlp_grad(const ModelSpec& spec, const ParamVector& w,
                     const Dataset& data, IndexSpan subset) {
  const MlpViews v = mlp_views(spec);
  const std::size_t m = subset.size();
  const Matrix x = gather(data, subset, false);
  MlpForward f = mlp_forward(spec, w, x);

  Matrix d2 = f.probs;  // m x c
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    d2(i, static_cast<std::size_t>(data.labels[subset[i]])) -= 1.0;
    for (std::size_t k = 0; k < v.c; ++k) d2(i, k) *= inv_m;
  }

  const Matrix w2(v.h, v.c, Vector(w.values.begin() + v.w2,
                                   w.values.begin() + v.w2 + v.h * v.c));
  Matrix d1 = d2.multiply(w2.transposed());  // m x h
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t u = 0; u < v.h; ++u) {
      const double a = f.a1(i, u);
      const double dphi = spec.activation == Activation::tanh
                              ? 1.0 - a * a
                              : (f.z1(i, u) > 0.0 ? 1.0 : 0.0);
      d1(i, u) *= dphi;
    }
  }

  ParamVector g = zero_params(spec);
  kernels::gram_at_b(x.data(), d1.data(), m, v.p, v.h,
                     {g.values.data() + v.w1, v.p * v.h});
  const Vector gb1 = col_sums(d1);
  std::copy(gb1.begin(), gb1.end(), g.values.begin() + v.b1);
  kernels::gram_at_b(f.a1.data(), d2.data(), m, v.h, v.c,
                     {g.values.data() + v.w2, v.h * v.c});
  const Vector gb2 = col_sums(d2);
  std::copy(gb2.begin(), gb2.end(), g.values.begin() + v.b2);

  if (spec.l2_coeff != 0.0)
    for (std::size_t i = 0; i < g.size(); ++i)
      g.values[i] += spec.l2_coeff * w.values[i];
  return g;
}

// Exact Hessian-vector product through the forward-over-reverse rule.
ParamVector mlp_hvp_analytic(const ModelSpec& spec, const ParamVector& w,
                             const Dataset& data, IndexSpan subset,
                             const ParamVector& vdir) {
  const MlpViews v = mlp_views(spec);
  const std::size_t m = subset.size();
  const Matrix x = gather(data, subset, false);
  MlpForward f = mlp_forward(spec, w, x);

  const Matrix w2(v.h, v.c, Vector(w.values.begin() + v.w2,
                                   w.values.begin() + v.w2 + v.h * v.c));
  const Matrix v1(v.p, v.h, Vector(vdir.values.begin() + v.w1,
                                   vdir.values.begin() + v.w1 + v.p * v.h));
  const Matrix v2(v.h, v.c, Vector(vdir.values.begin() + v.w2,
                                   vdir.values.begin() + v.w2 + v.h * v.c));

  const double inv_m = 1.0 / static_cast<double>(m);
  Matrix d2 = f.probs;
  for (std::size_t i = 0; i < m; ++i) {
    d2(i, static_cast<std::size_t>(data.labels[subset[i]])) -= 1.0;
    for (std::size_t k = 0; k < v.c; ++k) d2(i, k) *= inv_m;
  }

  // Forward sweep of directional derivatives.
  Matrix rz1 = x.multiply(v1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t u = 0; u < v.h; ++u) rz1(i, u) += vdir.values[v.b1 + u];

  Matrix phi1(m, v.h);  // activation derivative
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t u = 0; u < v.h; ++u) {
      const double a = f.a1(i, u);
      phi1(i, u) = 1.0 - a * a;  // tanh only; relu is rejected upstream
    }

  Matrix ra1(m, v.h);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t u = 0; u < v.h; ++u) ra1(i, u) = phi1(i, u) * rz1(i, u);

  Matrix rz2 = f.a1.multiply(v2);
  {
    const Matrix t = ra1.multiply(w2);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < v.c; ++k)
        rz2(i, k) += t(i, k) + vdir.values[v.b2 + k];
  }

  // R(probs) = P .* (RZ2 - <P, RZ2>); R(d2) = R(probs) / m.
  Matrix rd2(m, v.c);
  for (std::size_t i = 0; i < m; ++i) {
    double inner = 0.0;
    for (std::size_t k = 0; k < v.c; ++k) inner += f.probs(i, k) * rz2(i, k);
    for (std::size_t k = 0; k < v.c; ++k)
      rd2(i, k) = f.probs(i, k) * (rz2(i, k) - inner) * inv_m;
  }

  // R(d1) with d1 = (d2 W2^T) .* phi1 and phi1' = -2 a1 phi1 (tanh).
  Matrix rd1 = rd2.multiply(w2.transposed());
  {
    const Matrix t = d2.multiply(v2.transposed());
    const Matrix s = d2.multiply(w2.transposed());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t u = 0; u < v.h; ++u) {
        const double a = f.a1(i, u);
        rd1(i, u) = (rd1(i, u) + t(i, u)) * phi1(i, u) +
                    s(i, u) * (-2.0 * a * phi1(i, u)) * rz1(i, u);
      }
  }

  ParamVector out = zero_params(spec);
  kernels::gram_at_b(x.data(), rd1.data(), m, v.p, v.h,
                     {out.values.data() + v.w1, v.p * v.h});
  const Vector rb1 = col_sums(rd1);
  std::copy(rb1.begin(), rb1.end(), out.values.begin() + v.b1);
  {
    // R(grad W2) = A1^T R(d2) + R(A1)^T d2.
    Matrix acc(v.h, v.c);
    kernels::gram_at_b(f.a1.data(), rd2.data(), m, v.h, v.c, acc.data());
    Matrix acc2(v.h, v.c);
    kernels::gram_at_b(ra1.data(), d2.data(), m, v.h, v.c, acc2.data());
    for (std::size_t i = 0; i < v.h * v.c; ++i)
      out.values[v.w2 + i] = acc.data()[i] + acc2.data()[i];
  }
  const Vector rb2 = col_sums(rd2);
  std::copy(rb2.begin(), rb2.end(), out.values.begin() + v.b2);

  if (spec.l2_coeff != 0.0)
    for (std::size_t i = 0; i < out.size(); ++i)
      out.values[i] += spec.l2_coeff * vdir.values[i];
  return out;
}

void require_twice_differentiable(const ModelSpec& spec, const char* op) {
  if (spec.kind == ModelKind::mlp && spec.activation == Activation::relu)
    throw ConfigError(std::string(op) +
                      ": relu is not twice differentiable; use tanh for "
                      "second-order methods");
}

}  // namespace

double loss(const ModelSpec& spec, const ParamVector& w, const Dataset& data,
            IndexSpan subset) {
  const Vector samples = per_sample_losses(spec, w, data, subset);
  const double mean = kernels::blocked_sum(samples.size(), samples.data()) /
                      static_cast<double>(samples.size());
  return mean + regularizer(spec, w);
}

linalg::Vector per_sample_losses(const ModelSpec& spec, const ParamVector& w,
                                 const Dataset& data, IndexSpan subset) {
  check_subset(data, subset, "loss");
  check_params(spec, w, "loss");
  const std::size_t m = subset.size();
  switch (spec.kind) {
    case ModelKind::linear_regression: {
      const Matrix xa = gather(data, subset, true);
      const Matrix wmat(spec.input_dim + 1, 1, w.values);
      const Matrix pred = xa.multiply(wmat);
      Vector out(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double r = pred(i, 0) - data.targets[subset[i]];
        out[i] = 0.5 * r * r;
      }
      return out;
    }
    case ModelKind::logistic_regression: {
      const Matrix xa = gather(data, subset, true);
      return logistic_sample_losses(convex_logits(spec, w, xa), data.labels,
                                    subset);
    }
    case ModelKind::mlp: {
      const Matrix x = gather(data, subset, false);
      MlpForward f = mlp_forward(spec, w, x);
      return logistic_sample_losses(f.logits, data.labels, subset);
    }
  }
  throw ConfigError("loss: unknown model kind");
}

ParamVector grad(const ModelSpec& spec, const ParamVector& w,
                 const Dataset& data, IndexSpan subset) {
  check_subset(data, subset, "grad");
  check_params(spec, w, "grad");
  const std::size_t m = subset.size();
  const double inv_m = 1.0 / static_cast<double>(m);
  switch (spec.kind) {
    case ModelKind::linear_regression: {
      const Matrix xa = gather(data, subset, true);
      const Matrix wmat(spec.input_dim + 1, 1, w.values);
      const Matrix pred = xa.multiply(wmat);
      Matrix resid(m, 1);
      for (std::size_t i = 0; i < m; ++i)
        resid(i, 0) = (pred(i, 0) - data.targets[subset[i]]) * inv_m;
      ParamVector g{Vector(spec.param_count())};
      kernels::gram_at_b(xa.data(), resid.data(), m, spec.input_dim + 1, 1,
                         g.values);
      if (spec.l2_coeff != 0.0)
        for (std::size_t i = 0; i < g.size(); ++i)
          g.values[i] += spec.l2_coeff * w.values[i];
      return g;
    }
    case ModelKind::logistic_regression: {
      const Matrix xa = gather(data, subset, true);
      Matrix d = softmax_rows(convex_logits(spec, w, xa));
      for (std::size_t i = 0; i < m; ++i) {
        d(i, static_cast<std::size_t>(data.labels[subset[i]])) -= 1.0;
        for (std::size_t k = 0; k < spec.class_count; ++k) d(i, k) *= inv_m;
      }
      ParamVector g{Vector(spec.param_count())};
      kernels::gram_at_b(xa.data(), d.data(), m, spec.input_dim + 1,
                         spec.class_count, g.values);
      if (spec.l2_coeff != 0.0)
        for (std::size_t i = 0; i < g.size(); ++i)
          g.values[i] += spec.l2_coeff * w.values[i];
      return g;
    }
    case ModelKind::mlp:
      return mlp_grad(spec, w, data, subset);
  }
  throw ConfigError("grad: unknown model kind");
}

ParamVector hvp(const ModelSpec& spec, const ParamVector& w,
                const Dataset& data, IndexSpan subset, const ParamVector& v,
                HvpMode mode, double fd_eps) {
  check_subset(data, subset, "hvp");
  check_params(spec, w, "hvp");
  if (v.size() != spec.param_count())
    throw DimensionError("hvp: direction size mismatch");
  require_twice_differentiable(spec, "hvp");

  if (mode == HvpMode::finite_difference) {
    const double vnorm = linalg::norm2(v.values);
    if (vnorm == 0.0) return zero_params(spec);
    const double h = fd_eps / std::max(1.0, vnorm);
    ParamVector wp{linalg::add_scaled(w.values, h, v.values)};
    ParamVector wm{linalg::add_scaled(w.values, -h, v.values)};
    const ParamVector gp = grad(spec, wp, data, subset);
    const ParamVector gm = grad(spec, wm, data, subset);
    ParamVector out{Vector(spec.param_count())};
    const double inv = 1.0 / (2.0 * h);
    for (std::size_t i = 0; i < out.size(); ++i)
      out.values[i] = (gp.values[i] - gm.values[i]) * inv;
    return out;
  }

  const std::size_t m = subset.size();
  const double inv_m = 1.0 / static_cast<double>(m);
  switch (spec.kind) {
    case ModelKind::linear_regression: {
      const Matrix xa = gather(data, subset, true);
      const Matrix vmat(spec.input_dim + 1, 1, v.values);
      Matrix xv = xa.multiply(vmat);
      for (double& t : xv.data()) t *= inv_m;
      ParamVector out{Vector(spec.param_count())};
      kernels::gram_at_b(xa.data(), xv.data(), m, spec.input_dim + 1, 1,
                         out.values);
      if (spec.l2_coeff != 0.0)
        for (std::size_t i = 0; i < out.size(); ++i)
          out.values[i] += spec.l2_coeff * v.values[i];
      return out;
    }
    case ModelKind::logistic_regression: {
      const Matrix xa = gather(data, subset, true);
      const Matrix probs = softmax_rows(convex_logits(spec, w, xa));
      const Matrix vmat(spec.input_dim + 1, spec.class_count, v.values);
      const Matrix a = xa.multiply(vmat);  // m x C directional logits
      Matrix u(m, spec.class_count);
      for (std::size_t i = 0; i < m; ++i) {
        double inner = 0.0;
        for (std::size_t k = 0; k < spec.class_count; ++k)
          inner += probs(i, k) * a(i, k);
        for (std::size_t k = 0; k < spec.class_count; ++k)
          u(i, k) = probs(i, k) * (a(i, k) - inner) * inv_m;
      }
      ParamVector out{Vector(spec.param_count())};
      kernels::gram_at_b(xa.data(), u.data(), m, spec.input_dim + 1,
                         spec.class_count, out.values);
      if (spec.l2_coeff != 0.0)
        for (std::size_t i = 0; i < out.size(); ++i)
          out.values[i] += spec.l2_coeff * v.values[i];
      return out;
    }
    case ModelKind::mlp:
      return mlp_hvp_analytic(spec, w, data, subset, v);
  }
  throw ConfigError("hvp: unknown model kind");
}

linalg::SymmetricMatrix hessian(const ModelSpec& spec, const ParamVector& w,
                                const Dataset& data, IndexSpan subset,
                                std::size_t dim_cap) {
  check_subset(data, subset, "hessian");
  check_params(spec, w, "hessian");
  require_twice_differentiable(spec, "hessian");
  const std::size_t d = spec.param_count();
  if (d > dim_cap)
    throw CapExceededError("hessian: d = " + std::to_string(d) +
                           " exceeds dense cap " + std::to_string(dim_cap) +
                           "; use the stochastic HVP-based method instead");
  const std::size_t m = subset.size();
  const double inv_m = 1.0 / static_cast<double>(m);

  switch (spec.kind) {
    case ModelKind::linear_regression: {
      const Matrix xa = gather(data, subset, true);
      Matrix h(d, d);
      kernels::gram_at_b(xa.data(), xa.data(), m, d, d, h.data());
      for (double& x : h.data()) x *= inv_m;
      for (std::size_t i = 0; i < d; ++i) h(i, i) += spec.l2_coeff;
      return SymmetricMatrix(std::move(h));
    }
    case ModelKind::logistic_regression: {
      const Matrix xa = gather(data, subset, true);
      const Matrix probs = softmax_rows(convex_logits(spec, w, xa));
      const std::size_t pa = spec.input_dim + 1;
      const std::size_t c = spec.class_count;
      Matrix h(d, d);
      // Entry ((j,k),(j2,k2)) = mean_i x_ij x_ij2 * (P_ik [k==k2] - P_ik P_ik2).
#pragma omp parallel for schedule(static) if (d * d > 4096)
      for (long long jj = 0; jj < static_cast<long long>(pa); ++jj) {
        const std::size_t j = static_cast<std::size_t>(jj);
        for (std::size_t j2 = 0; j2 < pa; ++j2) {
          for (std::size_t k = 0; k < c; ++k)
            for (std::size_t k2 = 0; k2 < c; ++k2) {
              double acc = 0.0;
              for (std::size_t i = 0; i < m; ++i) {
                const double pk = probs(i, k);
                const double cross =
                    k == k2 ? pk * (1.0 - pk) : -pk * probs(i, k2);
                acc += xa(i, j) * xa(i, j2) * cross;
              }
              h(j * c + k, j2 * c + k2) = acc * inv_m;
            }
        }
      }
      for (std::size_t i = 0; i < d; ++i) h(i, i) += spec.l2_coeff;
      return SymmetricMatrix(std::move(h));
    }
    case ModelKind::mlp: {
      Matrix h(d, d);
#pragma omp parallel for schedule(dynamic)
      for (long long kk = 0; kk < static_cast<long long>(d); ++kk) {
        const std::size_t k = static_cast<std::size_t>(kk);
        ParamVector basis = zero_params(spec);
        basis.values[k] = 1.0;
        const ParamVector col = hvp(spec, w, data, subset, basis);
        for (std::size_t i = 0; i < d; ++i) h(i, k) = col.values[i];
      }
      return SymmetricMatrix(std::move(h));
    }
  }
  throw ConfigError("hessian: unknown model kind");
}

linalg::Matrix predict_proba(const ModelSpec& spec, const ParamVector& w,
                             const Dataset& data, IndexSpan subset) {
  check_subset(data, subset, "predict_proba");
  check_params(spec, w, "predict_proba");
  if (spec.kind == ModelKind::linear_regression)
    throw ConfigError("predict_proba: not defined for regression models");
  if (spec.kind == ModelKind::logistic_regression) {
    const Matrix xa = gather(data, subset, true);
    return softmax_rows(convex_logits(spec, w, xa));
  }
  const Matrix x = gather(data, subset, false);
  return mlp_forward(spec, w, x).probs;
}

std::vector<int> predict_labels(const ModelSpec& spec, const ParamVector& w,
                                const Dataset& data, IndexSpan subset) {
  const Matrix probs = predict_proba(spec, w, data, subset);
  std::vector<int> out(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < probs.cols(); ++k)
      if (probs(i, k) > probs(i, best)) best = k;  // ties keep lowest index
    out[i] = static_cast<int>(best);
  }
  return out;
}

}  // namespace cure::model
