// Copyright 2026 The dpanova Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dpanova/errors.hpp"

namespace dpanova {

struct Group {
  std::string label;
  std::vector<double> values;
};

// A validated one-way layout: k >= 2 non-empty groups with distinct labels,
// every value in [0, 1], and n > k in total.  Groups keep the order of
// first appearance in the input.  Construct through validate_dataset();
// the invariants are what the sensitivity bounds of the release mechanism
// rely on.
class Dataset {
 public:
  const std::vector<Group>& groups() const { return groups_; }
  std::int64_t n() const { return n_; }
  int k() const { return static_cast<int>(groups_.size()); }

  friend Dataset validate_dataset(std::vector<Group> groups);

 private:
  Dataset(std::vector<Group> groups, std::int64_t n)
      : groups_(std::move(groups)), n_(n) {}

  std::vector<Group> groups_;
  std::int64_t n_;
};

inline Dataset validate_dataset(std::vector<Group> groups) {
  std::unordered_set<std::string> seen;
  std::int64_t n = 0;
  for (const auto& g : groups) {
    if (!seen.insert(g.label).second) {
      throw ValidationError("duplicate group label '" + g.label + "'");
    }
    if (g.values.empty()) {
      throw EmptyGroup("group '" + g.label + "' has no values");
    }
    for (const double v : g.values) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ValueOutOfRange("value " + std::to_string(v) + " in group '" +
                              g.label + "' is outside [0, 1]");
      }
    }
    n += static_cast<std::int64_t>(g.values.size());
  }
  if (groups.size() < 2) {
    throw TooFewGroups("need at least 2 groups, got " +
                       std::to_string(groups.size()));
  }
  if (n <= static_cast<std::int64_t>(groups.size())) {
    throw DegenerateSize("need n > k, got n=" + std::to_string(n) +
                         " with k=" + std::to_string(groups.size()));
  }
  return Dataset(std::move(groups), n);
}

inline Dataset validate_dataset(
    std::span<const std::pair<std::string, double>> rows) {
  std::vector<Group> groups;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [label, value] : rows) {
    auto [it, inserted] = index.try_emplace(label, groups.size());
    if (inserted) groups.push_back(Group{label, {}});
    groups[it->second].values.push_back(value);
  }
  return validate_dataset(std::move(groups));
}

}  // namespace dpanova
