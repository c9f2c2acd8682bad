#include "sevpredict/adasyn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sevpredict/error.hpp"
#include "sevpredict/neighbors.hpp"

namespace sevpredict {

void SamplerConfig::validate() const {
  if (k_neighbors < 1) throw DomainError("k_neighbors must be at least 1");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  if (!(d_threshold > 0.0 && d_threshold <= 1.0)) {
    throw DomainError("d_threshold must lie in (0, 1]");
  }
}

namespace {

struct PreparedPlan {
  ClassPlan plan;
  // Same-class neighbour indices (into the input) for each member.
  std::vector<std::vector<std::size_t>> partners;
};

void check_input(std::span<const LabelledInstance> labelled) {
  if (labelled.empty()) throw DomainError("cannot oversample an empty training set");
  const auto dim = labelled.front().features.size();
  ClassCounts counts{};
  for (const auto& inst : labelled) {
    if (inst.features.size() != dim) throw DomainError("instances have inconsistent dimension");
    for (double v : inst.features) {
      if (!std::isfinite(v)) throw DomainError("non-finite feature value");
    }
    ++counts[index_of(inst.label)];
  }
  const auto present = std::count_if(counts.begin(), counts.end(),
                                     [](std::int64_t c) { return c > 0; });
  if (present < 2) throw DomainError("oversampling needs at least two classes");
}

std::vector<PreparedPlan> prepare(std::span<const LabelledInstance> labelled,
                                  const SamplerConfig& config) {
  config.validate();
  check_input(labelled);

  std::array<std::vector<std::size_t>, kNumClasses> members;
  for (std::size_t i = 0; i < labelled.size(); ++i) {
    members[index_of(labelled[i].label)].push_back(i);
  }
  std::size_t majority = 0;
  for (const auto& m : members) majority = std::max(majority, m.size());

  std::vector<std::vector<double>> raw;
  raw.reserve(labelled.size());
  for (const auto& inst : labelled) raw.push_back(inst.features);
  const MinMaxScaler scaler(raw);
  const auto scaled = scaler.transform_all(raw);

  std::vector<PreparedPlan> plans;
  for (Severity cls : kAllSeverities) {
    const auto& idx = members[index_of(cls)];
    if (idx.empty() || idx.size() >= majority) continue;
    const double ratio = static_cast<double>(idx.size()) / static_cast<double>(majority);
    if (!(ratio < config.d_threshold)) continue;

    PreparedPlan prepared;
    ClassPlan& plan = prepared.plan;
    plan.label = cls;
    plan.class_size = idx.size();
    plan.majority_size = majority;
    plan.target = static_cast<double>(majority - idx.size()) * config.beta;
    plan.members = idx;

    std::vector<std::vector<double>> same_class;
    same_class.reserve(idx.size());
    for (auto i : idx) same_class.push_back(scaled[i]);

    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const auto i = idx[pos];
      const auto nn = nearest_neighbors(scaled[i], scaled, config.k_neighbors, i);
      const auto foreign = std::count_if(nn.begin(), nn.end(), [&](std::size_t j) {
        return labelled[j].label != cls;
      });
      plan.difficulty.push_back(static_cast<double>(foreign) / static_cast<double>(nn.size()));

      std::vector<std::size_t> partners;
      if (idx.size() > 1) {
        for (auto p : nearest_neighbors(same_class[pos], same_class, config.k_neighbors, pos)) {
          partners.push_back(idx[p]);
        }
      }
      prepared.partners.push_back(std::move(partners));
    }

    double total = 0.0;
    for (double r : plan.difficulty) total += r;
    for (double r : plan.difficulty) {
      const double share = total > 0.0 ? r / total : 1.0 / static_cast<double>(idx.size());
      plan.allocation.push_back(static_cast<std::size_t>(std::llround(share * plan.target)));
    }
    plans.push_back(std::move(prepared));
  }
  return plans;
}

}  // namespace

std::vector<ClassPlan> adasyn_plan(std::span<const LabelledInstance> labelled,
                                   const SamplerConfig& config) {
  std::vector<ClassPlan> out;
  for (auto& p : prepare(labelled, config)) out.push_back(std::move(p.plan));
  return out;
}

std::vector<LabelledInstance> adasyn_balance(std::span<const LabelledInstance> labelled,
                                             const SamplerConfig& config) {
  const auto plans = prepare(labelled, config);
  std::vector<LabelledInstance> out(labelled.begin(), labelled.end());

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> gap(0.0, 1.0);
  for (const auto& prepared : plans) {
    const auto& plan = prepared.plan;
    for (std::size_t pos = 0; pos < plan.members.size(); ++pos) {
      const auto& seed = labelled[plan.members[pos]];
      const auto& partners = prepared.partners[pos];
      for (std::size_t n = 0; n < plan.allocation[pos]; ++n) {
        LabelledInstance syn;
        syn.module_id = seed.module_id + "#syn" + std::to_string(n + 1);
        syn.loc = seed.loc;
        syn.label = plan.label;
        syn.provenance = Provenance::Synthetic;
        if (partners.empty()) {
          // Single-member class: no interpolation partner exists.
          syn.features = seed.features;
        } else {
          std::uniform_int_distribution<std::size_t> pick(0, partners.size() - 1);
          const auto& partner = labelled[partners[pick(rng)]].features;
          const double lambda = gap(rng);
          syn.features.resize(seed.features.size());
          for (std::size_t f = 0; f < seed.features.size(); ++f) {
            const double a = seed.features[f];
            const double b = partner[f];
            // Clamp away rounding so the point stays inside the parents' box.
            syn.features[f] = std::clamp(a + lambda * (b - a), std::min(a, b), std::max(a, b));
          }
        }
        out.push_back(std::move(syn));
      }
    }
  }
  return out;
}

}  // namespace sevpredict
