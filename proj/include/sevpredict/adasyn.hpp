#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sevpredict/corpus.hpp"

namespace sevpredict {

struct SamplerConfig {
  std::size_t k_neighbors = 5;
  double beta = 1.0;         // 1 = full balance against the largest class
  double d_threshold = 1.0;  // classes with size ratio below this get oversampled
  std::uint64_t seed = 0;

  void validate() const;
};

// Oversampling plan for one minority class.
struct ClassPlan {
  Severity label = Severity::Clean;
  std::size_t class_size = 0;
  std::size_t majority_size = 0;
  double target = 0.0;                  // G = (majority - class) * beta
  std::vector<std::size_t> members;     // input indices, in input order
  std::vector<double> difficulty;       // r_i, fraction of out-of-class neighbours
  std::vector<std::size_t> allocation;  // g_i = round(normalised r_i * G)
};

// Classes are visited most severe first; only classes strictly smaller than
// the largest one with size ratio below d_threshold appear in the plan.
std::vector<ClassPlan> adasyn_plan(std::span<const LabelledInstance> labelled,
                                   const SamplerConfig& config);

// Adaptive synthetic oversampling. Output holds every input instance in its
// original order followed by the synthetic ones (class order, then seed
// order). Neighbour search runs on min-max scaled features; interpolation
// happens in the raw feature space.
std::vector<LabelledInstance> adasyn_balance(std::span<const LabelledInstance> labelled,
                                             const SamplerConfig& config);

}  // namespace sevpredict
