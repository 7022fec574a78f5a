// Copyright 2026 The Fouriq Authors
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

#ifndef FOURIQ_LATTICE_HPP
#define FOURIQ_LATTICE_HPP

#include <vector>

#include "fouriq/circuit.hpp"
#include "fouriq/common.hpp"

namespace fouriq {

enum class LatticeKind { State, Expectation };

/// Integer frequency vectors l with |l_s| <= bounds[s] per dimension.
/// State lattices bound by the per-parameter upload count L_s; expectation
/// lattices double it.
struct FrequencyLattice {
  int d = 0;
  std::vector<long> bounds;
  LatticeKind kind = LatticeKind::State;

  long size() const {
    long m = 1;
    for (long k : bounds) m *= 2 * k + 1;
    return m;
  }

  bool contains(const std::vector<long>& l) const {
    if (static_cast<int>(l.size()) != d) return false;
    for (int s = 0; s < d; ++s)
      if (l[s] < -bounds[s] || l[s] > bounds[s]) return false;
    return true;
  }

  /// Flat enumeration index, row-major with dimension 0 outermost and each
  /// coordinate running -K..+K.
  long flat_index(const std::vector<long>& l) const {
    long idx = 0;
    for (int s = 0; s < d; ++s) idx = idx * (2 * bounds[s] + 1) + (l[s] + bounds[s]);
    return idx;
  }

  std::vector<long> point(long flat) const {
    std::vector<long> l(d);
    for (int s = d - 1; s >= 0; --s) {
      const long w = 2 * bounds[s] + 1;
      l[s] = flat % w - bounds[s];
      flat /= w;
    }
    return l;
  }

  std::vector<std::vector<long>> points() const {
    std::vector<std::vector<long>> all;
    all.reserve(size());
    for (long i = 0; i < size(); ++i) all.push_back(point(i));
    return all;
  }

  bool operator==(const FrequencyLattice& o) const {
    return d == o.d && bounds == o.bounds && kind == o.kind;
  }
};

inline FrequencyLattice lattice(const ParametrizedCircuit& c, LatticeKind kind) {
  const std::vector<long> counts = upload_counts(c);
  FrequencyLattice lat;
  lat.d = c.d;
  lat.kind = kind;
  lat.bounds.reserve(c.d);
  for (long ls : counts) lat.bounds.push_back(kind == LatticeKind::State ? ls : 2 * ls);
  return lat;
}

}  // namespace fouriq

#endif  // FOURIQ_LATTICE_HPP
