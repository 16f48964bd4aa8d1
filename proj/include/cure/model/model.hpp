#pragma once

#include <span>
#include <string>
#include <vector>

#include "cure/linalg/matrix.hpp"
#include "cure/model/dataset.hpp"

namespace cure::model {

enum class ModelKind { linear_regression, logistic_regression, mlp };
enum class Activation { tanh, relu };

ModelKind model_kind_from_string(const std::string& s);
std::string to_string(ModelKind kind);
Activation activation_from_string(const std::string& s);
std::string to_string(Activation act);

// Named slice of the flat parameter vector.
struct ParamBlock {
  std::string name;
  std::size_t offset;
  std::size_t rows;
  std::size_t cols;

  std::size_t count() const { return rows * cols; }
};

// Model family plus the L2 regularizer coefficient of the training loss
// C(w) = (l2_coeff / 2) ||w||^2.
struct ModelSpec {
  ModelKind kind = ModelKind::logistic_regression;
  std::size_t input_dim = 0;
  std::size_t class_count = 2;
  std::size_t hidden_units = 0;       // mlp only
  Activation activation = Activation::tanh;
  double l2_coeff = 0.0;

  std::size_t param_count() const;
  std::vector<ParamBlock> layout() const;
  void validate() const;

  bool operator==(const ModelSpec&) const = default;
};

// Flat parameter vector; the layout is owned by the ModelSpec.
struct ParamVector {
  linalg::Vector values;

  std::size_t size() const { return values.size(); }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }
  bool all_finite() const;
};

double param_distance(const ParamVector& a, const ParamVector& b);

enum class HvpMode {
  analytic,           // exact Hessian-vector product
  finite_difference,  // central difference of analytic gradients
};

using IndexSpan = std::span<const std::size_t>;

// Mean per-sample loss over `subset` plus (l2/2) ||w||^2. Cross-entropy for
// classification, half squared error for regression.
double loss(const ModelSpec& spec, const ParamVector& w, const Dataset& data,
            IndexSpan subset);

// Per-sample losses without the regularizer (feeds the loss-threshold MIA).
linalg::Vector per_sample_losses(const ModelSpec& spec, const ParamVector& w,
                                 const Dataset& data, IndexSpan subset);

ParamVector grad(const ModelSpec& spec, const ParamVector& w,
                 const Dataset& data, IndexSpan subset);

// Dense Hessian. Analytic for the convex models; assembled column-by-column
// from the analytic HVP for the MLP, then symmetrized. Refuses d > dim_cap.
linalg::SymmetricMatrix hessian(const ModelSpec& spec, const ParamVector& w,
                                const Dataset& data, IndexSpan subset,
                                std::size_t dim_cap = 4096);

ParamVector hvp(const ModelSpec& spec, const ParamVector& w,
                const Dataset& data, IndexSpan subset, const ParamVector& v,
                HvpMode mode = HvpMode::analytic, double fd_eps = 1e-5);

// Softmax outputs, one row per subset element.
linalg::Matrix predict_proba(const ModelSpec& spec, const ParamVector& w,
                             const Dataset& data, IndexSpan subset);

// argmax class ids (ties broken toward the lowest class index).
std::vector<int> predict_labels(const ModelSpec& spec, const ParamVector& w,
                                const Dataset& data, IndexSpan subset);

ParamVector zero_params(const ModelSpec& spec);

}  // namespace cure::model
