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

#include "eegcn/graphs.hpp"

#include <cmath>
#include <queue>

#include "eegcn/errors.hpp"
#include "eegcn/hash.hpp"

namespace eegcn {

std::vector<ChannelLabel> standard_montage() {
  static const char* const kLabels[kMontageSize] = {
      "FP1-F7", "F7-T7",   "T7-P7",    "P7-O1",   "FP1-F3",  "F3-C3",
      "C3-P3",  "P3-O1",   "FP2-F4",   "F4-C4",   "C4-P4",   "P4-O2",
      "FP2-F8", "F8-T8",   "T8-P8-0",  "P8-O2",   "FZ-CZ",   "CZ-PZ",
      "P7-T7",  "T7-FT9",  "FT9-FT10", "FT10-T8", "T8-P8-1"};
  std::vector<ChannelLabel> out;
  out.reserve(kMontageSize);
  for (const char* label : kLabels) out.push_back(ChannelLabel::parse(label));
  return out;
}

namespace {

// Midline electrodes share no electrode with any parasagittal channel, so on
// their own they form a separate component. They are joined through their
// immediate lateral neighbours on the 10-20 grid.
bool midline_neighbours(const std::string& a, const std::string& b) {
  static const std::pair<const char*, const char*> kPairs[] = {
      {"FZ", "F3"}, {"FZ", "F4"}, {"CZ", "C3"}, {"CZ", "C4"}, {"PZ", "P3"}, {"PZ", "P4"}};
  for (const auto& [m, l] : kPairs) {
    if ((a == m && b == l) || (a == l && b == m)) return true;
  }
  return false;
}

bool channels_adjacent(const ChannelLabel& x, const ChannelLabel& y) {
  if (x.shares_electrode(y)) return true;
  if (!x.bipolar() || !y.bipolar()) return false;
  for (const auto* ex : {&x.electrode_a, &x.electrode_b}) {
    for (const auto* ey : {&y.electrode_a, &y.electrode_b}) {
      if (midline_neighbours(*ex, *ey)) return true;
    }
  }
  return false;
}

}  // namespace

RowMatrix build_adjacency(const std::vector<ChannelLabel>& montage) {
  const auto n = static_cast<Eigen::Index>(montage.size());
  RowMatrix a = RowMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (channels_adjacent(montage[static_cast<std::size_t>(i)],
                            montage[static_cast<std::size_t>(j)])) {
        a(i, j) = a(j, i) = 1.0;
      }
    }
  }
  return a;
}

EegGraph normalize(const RowMatrix& adjacency) {
  const Eigen::Index n = adjacency.rows();
  if (n == 0 || adjacency.cols() != n) throw ConfigError("adjacency must be square and non-empty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) throw ConfigError("adjacency diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = adjacency(i, j);
      if (v != 0.0 && v != 1.0) throw ConfigError("adjacency must be binary");
      if (v != adjacency(j, i)) throw ConfigError("adjacency must be symmetric");
    }
  }
  EegGraph g;
  g.adjacency = adjacency;
  g.adjacency_self_loops = adjacency + RowMatrix::Identity(n, n);
  g.degree = g.adjacency_self_loops.rowwise().sum();
  const Vector inv_sqrt = g.degree.array().rsqrt();
  g.propagation = inv_sqrt.asDiagonal() * g.adjacency_self_loops * inv_sqrt.asDiagonal();
  return g;
}

double spectral_radius(const RowMatrix& m, int iterations) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 0.0;
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = 1.0 + 0.01 * static_cast<double>(i % 7);
  x.normalize();
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector y = m * x;
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    estimate = norm;
    x = y / norm;
  }
  return estimate;
}

GraphReport validate(const EegGraph& graph) {
  GraphReport report;
  const RowMatrix& a = graph.adjacency;
  const RowMatrix& s = graph.propagation;
  const Eigen::Index n = a.rows();

  for (Eigen::Index i = 0; i < n && !report.first_asymmetry; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(i, j) != a(j, i)) {
        report.adjacency_symmetric = false;
        report.first_asymmetry = std::make_pair(i, j);
        report.failures.push_back("adjacency asymmetric at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
        break;
      }
    }
  }
  if (s.rows() != n || s.cols() != n) {
    report.propagation_symmetric = false;
    report.failures.push_back("propagation matrix shape differs from adjacency");
  } else {
    for (Eigen::Index i = 0; i < n && report.propagation_symmetric; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (std::abs(s(i, j) - s(j, i)) > 1e-12) {
          report.propagation_symmetric = false;
          report.failures.push_back("propagation asymmetric at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
          break;
        }
      }
    }
  }

  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<Eigen::Index> frontier;
  if (n > 0) {
    frontier.push(0);
    seen[0] = true;
  }
  Eigen::Index reached = 0;
  while (!frontier.empty()) {
    const Eigen::Index u = frontier.front();
    frontier.pop();
    ++reached;
    for (Eigen::Index v = 0; v < n; ++v) {
      if ((a(u, v) != 0.0 || a(v, u) != 0.0) && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        frontier.push(v);
      }
    }
  }
  report.connected = reached == n;
  if (!report.connected) {
    report.failures.push_back("graph is disconnected: " + std::to_string(reached) + " of " +
                              std::to_string(n) + " nodes reachable from node 0");
  }

  if (s.rows() == n && s.cols() == n) {
    report.spectral_radius = spectral_radius(s);
    if (report.spectral_radius > 1.0 + 1e-9) {
      report.failures.push_back("spectral radius " + std::to_string(report.spectral_radius) +
                                " exceeds 1");
    }
  }
  report.passed = report.failures.empty();
  return report;
}

std::string adjacency_fingerprint(const RowMatrix& adjacency) {
  std::string bytes = std::to_string(adjacency.rows()) + "x" + std::to_string(adjacency.cols()) + ":";
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
      bytes.push_back(adjacency(i, j) != 0.0 ? '1' : '0');
    }
  }
  return sha256_hex(bytes);
}

std::string edge_list_csv(const RowMatrix& adjacency, const std::vector<ChannelLabel>& labels) {
  std::string out = "node_i,node_j\n";
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j) {
      if (adjacency(i, j) != 0.0) {
        out += labels.at(static_cast<std::size_t>(i)).raw + "," +
               labels.at(static_cast<std::size_t>(j)).raw + "\n";
      }
    }
  }
  return out;
}

EegGraph standard_graph() { return normalize(build_adjacency(standard_montage())); }

}  // namespace eegcn
