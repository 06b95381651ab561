// Copyright 2026 The mugroup Authors
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

#include "mugroup/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "mugroup/errors.hpp"

namespace mugroup {

void WeightedGraph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const WeightedEdge& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("self loops are not allowed");
    if (!std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weight is not finite");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw std::invalid_argument("parallel edge between " +
                                  std::to_string(e.u) + " and " +
                                  std::to_string(e.v));
    }
  }
}

namespace {

// Edmonds' blossom algorithm for maximum-weight matching on a general graph,
// primal-dual formulation with O(n^3) total work. Vertices 0..n-1 are the
// trivial blossoms; non-trivial blossoms use ids n..2n-1.
//
// Endpoint p of edge k = p / 2 is endpoints_[p]; p ^ 1 is the other end.
// Labels: 0 free, 1 S (outer), 2 T (inner); bit 4 marks during scan_blossom.
class BlossomSolver {
 public:
  BlossomSolver(std::size_t n, const std::vector<WeightedEdge>& edges)
      : nv_(static_cast<int>(n)) {
    for (const WeightedEdge& e : edges) {
      if (e.weight <= 0.0) continue;  // never part of a maximum matching
      eu_.push_back(static_cast<int>(e.u));
      ev_.push_back(static_cast<int>(e.v));
      ew_.push_back(e.weight);
    }
    ne_ = static_cast<int>(ew_.size());
  }

  std::vector<int> solve() {
    std::vector<int> result(static_cast<std::size_t>(nv_), -1);
    if (ne_ == 0) return result;
    init();

    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nv_; b < 2 * nv_; ++b) blossombestedges_[b].clear();
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();

      for (int v = 0; v < nv_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            double kslack = 0.0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0.0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) break;

        // No augmenting path with the current duals; pick the dual update.
        int deltatype = 1;
        double delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const double d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const double d = slack(bestedge_[b]) / 2.0;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 &&
              label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;  // optimum reached
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = eu_[deltaedge];
          int j = ev_[deltaedge];
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(eu_[deltaedge]);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;

      for (int b = nv_; b < 2 * nv_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
            dualvar_[b] == 0.0) {
          expand_blossom(b, true);
        }
      }
    }

    for (int v = 0; v < nv_; ++v) {
      result[static_cast<std::size_t>(v)] = mate_[v] >= 0 ? endpoint_[mate_[v]] : -1;
    }
    return result;
  }

 private:
  void init() {
    const int n2 = 2 * nv_;
    double maxweight = 0.0;
    for (double w : ew_) maxweight = std::max(maxweight, w);
    endpoint_.resize(static_cast<std::size_t>(2 * ne_));
    for (int p = 0; p < 2 * ne_; ++p) {
      endpoint_[p] = (p % 2 == 0) ? eu_[p / 2] : ev_[p / 2];
    }
    neighbend_.assign(static_cast<std::size_t>(nv_), {});
    for (int k = 0; k < ne_; ++k) {
      neighbend_[eu_[k]].push_back(2 * k + 1);
      neighbend_[ev_[k]].push_back(2 * k);
    }
    mate_.assign(static_cast<std::size_t>(nv_), -1);
    label_.assign(static_cast<std::size_t>(n2), 0);
    labelend_.assign(static_cast<std::size_t>(n2), -1);
    inblossom_.resize(static_cast<std::size_t>(nv_));
    for (int v = 0; v < nv_; ++v) inblossom_[v] = v;
    blossomparent_.assign(static_cast<std::size_t>(n2), -1);
    blossomchilds_.assign(static_cast<std::size_t>(n2), {});
    blossombase_.assign(static_cast<std::size_t>(n2), -1);
    for (int v = 0; v < nv_; ++v) blossombase_[v] = v;
    blossomendps_.assign(static_cast<std::size_t>(n2), {});
    bestedge_.assign(static_cast<std::size_t>(n2), -1);
    blossombestedges_.assign(static_cast<std::size_t>(n2), {});
    unusedblossoms_.clear();
    for (int b = nv_; b < n2; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(static_cast<std::size_t>(n2), 0.0);
    for (int v = 0; v < nv_; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(static_cast<std::size_t>(ne_), false);
  }

  double slack(int k) const {
    return dualvar_[eu_[k]] + dualvar_[ev_[k]] - 2.0 * ew_[k];
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) blossom_leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    blossom_leaves(b, out);
    return out;
  }

  static int wrap(int j, int len) { return ((j % len) + len) % len; }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      blossom_leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  // Walks up from v and w in alternation; returns the base of a new blossom
  // or -1 if the two trees are distinct (augmenting path).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = eu_[k];
    int w = ev_[k];
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;

    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    blossomchilds_[b] = path;
    blossomendps_[b] = endps;

    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0.0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    // Least-slack edges from the new blossom to each neighbouring S-blossom.
    std::vector<int> bestedgeto(static_cast<std::size_t>(2 * nv_), -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (blossombestedges_[child].empty()) {
        for (int leaf : leaves(child)) {
          std::vector<int> ks;
          ks.reserve(neighbend_[leaf].size());
          for (int p : neighbend_[leaf]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = eu_[kk];
          int j = ev_[kk];
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
          }
        }
      }
      blossombestedges_[child].clear();
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto) {
      if (kk != -1) blossombestedges_[b].push_back(kk);
    }
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0.0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }

    if (!endstage && label_[b] == 2) {
      // Relabel the sub-blossoms on the even-length path from the entry
      // child to the base as T/S alternately.
      const int len = static_cast<int>(childs.size());
      const auto& endps = blossomendps_[b];
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(
          std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep = 0;
      int endptrick = 0;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, len)] / 2] = true;
        j += jstep;
        p = endps[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      int bv = childs[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[wrap(j, len)] != entrychild) {
        bv = childs[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          found = leaf;
          if (label_[leaf] != 0) break;
        }
        if (found >= 0 && label_[found] != 0) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }

    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  // Swaps matched/unmatched edges on the path through blossom b from vertex
  // v to the base, making v the new base.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);

    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    const int i = static_cast<int>(
        std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep = 0;
    int endptrick = 0;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, len)];
      const int p = endps[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = childs[wrap(j, len)];
      if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(int k) {
    const int v = eu_[k];
    const int w = ev_[k];
    const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (auto [s, p] : starts) {
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;  // reached a free root
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int nv_ = 0;
  int ne_ = 0;
  std::vector<int> eu_, ev_;
  std::vector<double> ew_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_;
  std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
  std::vector<int> blossombase_, bestedge_, unusedblossoms_;
  std::vector<double> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

Matching matching_from_mates(const WeightedGraph& graph,
                             const std::vector<int>& mate) {
  Matching m;
  for (std::size_t v = 0; v < mate.size(); ++v) {
    if (mate[v] > static_cast<int>(v)) {
      m.pairs.emplace_back(v, static_cast<std::size_t>(mate[v]));
    }
  }
  // Edge weights looked up from the graph so total_weight is an exact sum of
  // input values.
  for (const auto& [a, b] : m.pairs) {
    for (const WeightedEdge& e : graph.edges) {
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
        m.total_weight += e.weight;
        break;
      }
    }
  }
  return m;
}

}  // namespace

Matching max_weight_matching(const WeightedGraph& graph) {
  graph.validate();
  BlossomSolver solver(graph.num_vertices, graph.edges);
  return matching_from_mates(graph, solver.solve());
}

Matching brute_force_matching(const WeightedGraph& graph) {
  graph.validate();
  const std::size_t n = graph.num_vertices;
  if (n > kBruteForceMatchingLimit) {
    throw CapacityError("brute_force_matching supports at most " +
                        std::to_string(kBruteForceMatchingLimit) +
                        " vertices, got " + std::to_string(n));
  }
  constexpr double kNoEdge = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> w(n * n, kNoEdge);
  for (const WeightedEdge& e : graph.edges) {
    w[e.u * n + e.v] = e.weight;
    w[e.v * n + e.u] = e.weight;
  }

  std::vector<int> mate(n, -1);
  std::vector<int> best_mate = mate;
  double best = 0.0;
  // Sum is accumulated in ascending order of the lower endpoint, the same
  // order matching_from_mates uses.
  auto recurse = [&](auto&& self, std::size_t v, double sum) -> void {
    while (v < n && mate[v] != -1) ++v;
    if (v == n) {
      if (sum > best) {
        best = sum;
        best_mate = mate;
      }
      return;
    }
    mate[v] = static_cast<int>(v);  // leave v unmatched
    self(self, v + 1, sum);
    mate[v] = -1;
    for (std::size_t u = v + 1; u < n; ++u) {
      if (mate[u] != -1 || std::isnan(w[v * n + u])) continue;
      mate[v] = static_cast<int>(u);
      mate[u] = static_cast<int>(v);
      self(self, v + 1, sum + w[v * n + u]);
      mate[v] = mate[u] = -1;
    }
  };
  recurse(recurse, 0, 0.0);

  for (std::size_t v = 0; v < n; ++v) {
    if (best_mate[v] == static_cast<int>(v)) best_mate[v] = -1;
  }
  return matching_from_mates(graph, best_mate);
}

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("WeightMatrix data size mismatch");
  }
}

namespace {

void check_assignment_input(const WeightMatrix& benefit) {
  if (benefit.rows() > benefit.cols()) {
    throw std::invalid_argument("assignment needs rows <= cols, got " +
                                std::to_string(benefit.rows()) + "x" +
                                std::to_string(benefit.cols()));
  }
  for (std::size_t r = 0; r < benefit.rows(); ++r) {
    for (std::size_t c = 0; c < benefit.cols(); ++c) {
      if (!std::isfinite(benefit(r, c))) {
        throw std::invalid_argument("assignment benefit is not finite");
      }
    }
  }
}

double assignment_total(const WeightMatrix& benefit,
                        const std::vector<std::size_t>& row_to_col) {
  double total = 0.0;
  for (std::size_t r = 0; r < row_to_col.size(); ++r) {
    total += benefit(r, row_to_col[r]);
  }
  return total;
}

}  // namespace

Assignment hungarian(const WeightMatrix& benefit) {
  check_assignment_input(benefit);
  const std::size_t rows = benefit.rows();
  const std::size_t n = benefit.cols();
  Assignment out;
  if (rows == 0) return out;

  // Square minimisation problem: cost = -benefit, rows padded with zero-cost
  // dummies. 1-based potentials as in the classical formulation.
  std::vector<double> cost((n + 1) * (n + 1), 0.0);
  double scale = 1.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cost[(r + 1) * (n + 1) + (c + 1)] = -benefit(r, c);
      scale = std::max(scale, std::abs(benefit(r, c)));
    }
  }
  auto a = [&](std::size_t i, std::size_t j) { return cost[i * (n + 1) + j]; };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // row_of[col], col_of[row], 1-based.
  std::vector<std::size_t> col_of(n + 1, 0);
  std::vector<std::size_t>& row_of = p;
  for (std::size_t j = 1; j <= n; ++j) col_of[p[j]] = j;

  // Every optimal assignment is a perfect matching on the tight edges of the
  // optimal duals. Walk the real rows in order and move each onto its
  // smallest tight column that still admits a perfect matching of the
  // remaining rows (found as an alternating cycle).
  const double eps = 1e-9 * scale;
  auto tight = [&](std::size_t i, std::size_t j) {
    return std::abs(a(i, j) - u[i] - v[j]) <= eps;
  };
  std::vector<bool> fixed_row(n + 1, false), fixed_col(n + 1, false);
  std::vector<std::size_t> parent_col(n + 1), parent_row(n + 1);
  for (std::size_t r = 1; r <= rows; ++r) {
    const std::size_t c0 = col_of[r];
    for (std::size_t c = 1; c < c0; ++c) {
      if (fixed_col[c] || !tight(r, c)) continue;
      // r takes c; its owner must reach c0 through tight alternating edges.
      const std::size_t start = row_of[c];
      std::vector<bool> seen_row(n + 1, false);
      std::vector<std::size_t> bfs{start};
      seen_row[start] = true;
      seen_row[r] = true;
      std::fill(parent_col.begin(), parent_col.end(), 0);
      std::size_t hit_row = 0;
      for (std::size_t head = 0; head < bfs.size() && hit_row == 0; ++head) {
        const std::size_t x = bfs[head];
        for (std::size_t y = 1; y <= n; ++y) {
          if (fixed_col[y] || y == c || y == col_of[x] || !tight(x, y)) continue;
          if (y == c0) {
            hit_row = x;
            break;
          }
          const std::size_t owner = row_of[y];
          if (seen_row[owner] || fixed_row[owner]) continue;
          seen_row[owner] = true;
          parent_col[owner] = y;
          parent_row[owner] = x;
          bfs.push_back(owner);
        }
      }
      if (hit_row == 0) continue;
      // Shift columns back along the BFS path, then give c to r.
      std::size_t x = hit_row;
      std::size_t target = c0;
      while (true) {
        const std::size_t old_col = col_of[x];
        col_of[x] = target;
        row_of[target] = x;
        if (x == start) break;
        target = old_col;
        x = parent_row[x];
      }
      col_of[r] = c;
      row_of[c] = r;
      break;
    }
    fixed_row[r] = true;
    fixed_col[col_of[r]] = true;
  }

  out.row_to_col.resize(rows);
  for (std::size_t r = 1; r <= rows; ++r) out.row_to_col[r - 1] = col_of[r] - 1;
  out.total_benefit = assignment_total(benefit, out.row_to_col);
  return out;
}

Assignment brute_force_assignment(const WeightMatrix& benefit) {
  check_assignment_input(benefit);
  const std::size_t rows = benefit.rows();
  const std::size_t cols = benefit.cols();
  if (cols > 9) {
    throw CapacityError("brute_force_assignment supports at most 9 columns");
  }
  Assignment best;
  if (rows == 0) return best;
  std::vector<std::size_t> current(rows);
  std::vector<bool> used(cols, false);
  bool have = false;
  auto recurse = [&](auto&& self, std::size_t r) -> void {
    if (r == rows) {
      const double total = assignment_total(benefit, current);
      if (!have || total > best.total_benefit) {
        have = true;
        best.total_benefit = total;
        best.row_to_col = current;
      }
      return;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c]) continue;
      used[c] = true;
      current[r] = c;
      self(self, r + 1);
      used[c] = false;
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace mugroup
