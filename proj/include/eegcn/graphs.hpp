// Copyright 2026 The eegcn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EEGCN_GRAPHS_HPP_
#define EEGCN_GRAPHS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eegcn/matrix.hpp"
#include "eegcn/signal_io.hpp"

namespace eegcn {

inline constexpr std::size_t kMontageSize = 23;

// The 23 bipolar channels common to every CHB-MIT case, in file order.
std::vector<ChannelLabel> standard_montage();

// A_ij = 1 iff i != j and channels i and j share an electrode name (the
// "-0"/"-1" disambiguator is ignored), or one channel carries a midline
// electrode (Fz, Cz, Pz) whose direct lateral 10-20 neighbour (F3/F4, C3/C4,
// P3/P4) appears in the other. Entries are exactly 0.0 or 1.0.
RowMatrix build_adjacency(const std::vector<ChannelLabel>& montage);

// Binary adjacency plus the self-loop, symmetric-normalized propagation
// operator S = D~^-1/2 (A + I) D~^-1/2 used by every GCN layer.
struct EegGraph {
  RowMatrix adjacency;
  RowMatrix adjacency_self_loops;
  Vector degree;  // diagonal of D~, i.e. row sums of A + I
  RowMatrix propagation;

  Eigen::Index num_nodes() const { return adjacency.rows(); }
};

// Throws ConfigError unless `adjacency` is square, binary, symmetric and has
// a zero diagonal.
EegGraph normalize(const RowMatrix& adjacency);

struct GraphReport {
  bool passed = true;
  bool adjacency_symmetric = true;
  bool propagation_symmetric = true;
  bool connected = true;
  double spectral_radius = 0.0;
  // First (i, j) with A_ij != A_ji, if any.
  std::optional<std::pair<Eigen::Index, Eigen::Index>> first_asymmetry;
  std::vector<std::string> failures;
};

// Checks symmetry, connectivity (breadth-first traversal over A) and that the
// power-iteration spectral radius of S does not exceed 1 + 1e-9.
GraphReport validate(const EegGraph& graph);

// Largest eigenvalue magnitude of a symmetric matrix by power iteration.
double spectral_radius(const RowMatrix& symmetric, int iterations = 2000);

// Hex SHA-256 of the binary adjacency, used to pair checkpoints with graphs.
std::string adjacency_fingerprint(const RowMatrix& adjacency);

// `node_i,node_j` rows (raw labels, i < j) for every edge.
std::string edge_list_csv(const RowMatrix& adjacency,
                          const std::vector<ChannelLabel>& labels);

EegGraph standard_graph();

}  // namespace eegcn

#endif  // EEGCN_GRAPHS_HPP_
