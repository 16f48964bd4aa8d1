// Test-only oracles, kept independent of the library's solver paths: a
// Gauss-Jordan solver, finite differences, random spectrum builders, and a
// brute-force lattice minimizer for the cubic model.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cure/common/rng.hpp"
#include "cure/linalg/matrix.hpp"
#include "cure/model/model.hpp"

namespace oracles {

using cure::linalg::Matrix;
using cure::linalg::SymmetricMatrix;
using cure::linalg::Vector;

// Dense solve by Gauss-Jordan elimination with partial pivoting.
inline Vector gauss_jordan_solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("gauss_jordan_solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0)
      throw std::runtime_error("gauss_jordan_solve: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) a(col, j) *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  return b;
}

// Random orthonormal matrix via Gram-Schmidt on a seeded Gaussian draw.
inline Matrix random_orthonormal(std::size_t d, cure::Rng& rng) {
  Matrix q(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    Vector v(d);
    for (auto& x : v) x = rng.normal();
    for (std::size_t prev = 0; prev < col; ++prev) {
      double proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += q(i, prev) * v[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= proj * q(i, prev);
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) {
      --col;  // rare degenerate draw; retry the column
      continue;
    }
    for (std::size_t i = 0; i < d; ++i) q(i, col) = v[i] / norm;
  }
  return q;
}

struct SpectrumMatrix {
  SymmetricMatrix matrix;
  Vector eigenvalues;  // aligned with Q's columns, not sorted
  Matrix q;
};

// H = Q diag(values) Q^T for a caller-chosen spectrum.
inline SpectrumMatrix from_spectrum(const Vector& values, cure::Rng& rng) {
  const std::size_t d = values.size();
  Matrix q = random_orthonormal(d, rng);
  Matrix scaled = q;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled(i, j) *= values[j];
  Matrix h = scaled.multiply(q.transposed());
  return {SymmetricMatrix(std::move(h)), values, std::move(q)};
}

// Degenerate PSD matrix with `rank` positive eigenvalues and exact zeros.
inline SpectrumMatrix random_degenerate(std::size_t d, std::size_t rank,
                                        cure::Rng& rng) {
  Vector values(d, 0.0);
  for (std::size_t i = 0; i < rank; ++i) values[i] = rng.uniform(0.5, 3.0);
  return from_spectrum(values, rng);
}

// Central finite difference of the loss, coordinate by coordinate.
inline Vector fd_gradient(const cure::model::ModelSpec& spec,
                          const cure::model::ParamVector& w,
                          const cure::model::Dataset& data,
                          cure::model::IndexSpan subset) {
  Vector g(w.size());
  cure::model::ParamVector probe = w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double h = 1e-5 * (1.0 + std::abs(w.values[i]));
    probe.values[i] = w.values[i] + h;
    const double up = cure::model::loss(spec, probe, data, subset);
    probe.values[i] = w.values[i] - h;
    const double down = cure::model::loss(spec, probe, data, subset);
    probe.values[i] = w.values[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// Brute-force minimizer of the cubic model over a lattice, refined around the
// best coarse candidates down to `final_step` resolution.
struct LatticeResult {
  Vector point;
  double value;
};

inline double cubic_value(const SymmetricMatrix& h, const Vector& g, double lip,
                          const Vector& s) {
  const Vector hs = h.apply(s);
  double gs = 0.0, shs = 0.0, n2 = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    gs += g[i] * s[i];
    shs += s[i] * hs[i];
    n2 += s[i] * s[i];
  }
  const double n = std::sqrt(n2);
  return gs + 0.5 * shs + lip / 3.0 * n * n * n;
}

inline void lattice_scan(const SymmetricMatrix& h, const Vector& g, double lip,
                         const Vector& center, double half_width, double step,
                         std::size_t keep,
                         std::vector<LatticeResult>& best_out) {
  const std::size_t d = g.size();
  const std::size_t points = static_cast<std::size_t>(
      std::llround(2.0 * half_width / step)) + 1;
  std::vector<std::size_t> idx(d, 0);
  Vector s(d);
  best_out.clear();
  auto consider = [&](const Vector& cand, double value) {
    if (best_out.size() < keep) {
      best_out.push_back({cand, value});
    } else {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < best_out.size(); ++i)
        if (best_out[i].value > best_out[worst].value) worst = i;
      if (value < best_out[worst].value) best_out[worst] = {cand, value};
    }
  };
  while (true) {
    for (std::size_t j = 0; j < d; ++j)
      s[j] = center[j] - half_width + static_cast<double>(idx[j]) * step;
    consider(s, cubic_value(h, g, lip, s));
    std::size_t j = 0;
    while (j < d && ++idx[j] == points) {
      idx[j] = 0;
      ++j;
    }
    if (j == d) break;
  }
}

inline LatticeResult lattice_minimize(const SymmetricMatrix& h, const Vector& g,
                                      double lip, double box_half_width,
                                      double final_step) {
  const std::size_t d = g.size();
  const double coarse_step = d <= 2 ? 0.05 : (d == 3 ? 0.125 : 0.25);
  std::vector<LatticeResult> candidates;
  lattice_scan(h, g, lip, Vector(d, 0.0), box_half_width, coarse_step, 8,
               candidates);

  LatticeResult best = candidates.front();
  for (const auto& c : candidates)
    if (c.value < best.value) best = c;

  for (const auto& seed : candidates) {
    LatticeResult local = seed;
    double width = coarse_step;
    double step = coarse_step / 10.0;
    while (step >= final_step * 0.999) {
      std::vector<LatticeResult> refined;
      lattice_scan(h, g, lip, local.point, width, step, 1, refined);
      local = refined.front();
      width = step;
      step /= 10.0;
    }
    if (local.value < best.value) best = local;
  }
  return best;
}

}  // namespace oracles
