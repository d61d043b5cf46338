#include "astronet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "astronet/errors.hpp"

namespace astronet {

bool in_bounds(const LatticeDims& d, const CellCoord& c) {
  return c.i >= 0 && c.j >= 0 && c.k >= 0 && c.i < d.i && c.j < d.j && c.k < d.k;
}

CellId cell_id(const LatticeDims& d, const CellCoord& c) {
  return static_cast<CellId>(c.i + d.i * c.j + d.i * d.j * c.k);
}

CellCoord cell_coord(const LatticeDims& d, CellId id) {
  const int n = static_cast<int>(id);
  return {n % d.i, (n / d.i) % d.j, n / (d.i * d.j)};
}

double euclidean_distance(const CellCoord& a, const CellCoord& b) {
  const double di = a.i - b.i, dj = a.j - b.j, dk = a.k - b.k;
  return std::sqrt(di * di + dj * dj + dk * dk);
}

std::string topology_kind(const TopologySpec& spec) {
  struct V {
    std::string operator()(const RegularDegree&) const { return "regular_degree"; }
    std::string operator()(const LinkRadius&) const { return "link_radius"; }
    std::string operator()(const Shortcut&) const { return "shortcut"; }
    std::string operator()(const ErdosRenyi&) const { return "erdos_renyi"; }
  };
  return std::visit(V{}, spec);
}

std::string topology_label(const TopologySpec& spec) {
  std::ostringstream os;
  os << topology_kind(spec);
  if (const auto* lr = std::get_if<LinkRadius>(&spec)) os << '(' << lr->d << ')';
  return os.str();
}

void validate(const TopologySpec& spec) {
  struct V {
    void operator()(const RegularDegree& t) const {
      if (t.n < 1 || t.n > kMaxDegree) throw ConfigError("topology.n", "must be in [1, 6]");
    }
    void operator()(const LinkRadius& t) const {
      if (!(t.d > 0.0)) throw ConfigError("topology.d", "must be > 0");
      if (t.n_max < 0) throw ConfigError("topology.n_max", "must be >= 0");
    }
    void operator()(const Shortcut& t) const {
      if (t.a < 1) throw ConfigError("topology.a", "must be >= 1");
      if (t.n < 1 || t.n > kMaxDegree) throw ConfigError("topology.n", "must be in [1, 6]");
    }
    void operator()(const ErdosRenyi& t) const {
      if (!(t.p >= 0.0 && t.p <= 1.0)) throw ConfigError("topology.p", "must be in [0, 1]");
    }
  };
  std::visit(V{}, spec);
}

TissueGraph::TissueGraph(LatticeDims dims)
    : dims_(dims), neighbours_(dims.size()), incident_(dims.size()) {}

bool TissueGraph::has_edge(CellId a, CellId b) const {
  const auto& n = neighbours_[a];
  return std::find(n.begin(), n.end(), b) != n.end();
}

bool TissueGraph::add_edge(CellId a, CellId b, bool enforce_cap) {
  if (a == b || a >= cell_count() || b >= cell_count() || has_edge(a, b)) return false;
  if (enforce_cap && (degree(a) >= kMaxDegree || degree(b) >= kMaxDegree)) return false;
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({std::min(a, b), std::max(a, b)});
  neighbours_[a].push_back(b);
  neighbours_[b].push_back(a);
  incident_[a].push_back(id);
  incident_[b].push_back(id);
  return true;
}

bool TissueGraph::remove_edge(CellId a, CellId b) {
  const Edge key{std::min(a, b), std::max(a, b)};
  const auto it = std::find(edges_.begin(), edges_.end(), key);
  if (it == edges_.end()) return false;
  edges_.erase(it);
  rebuild_incidence();
  return true;
}

void TissueGraph::canonicalize() {
  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::pair(edges_[x].a, edges_[x].b) < std::pair(edges_[y].a, edges_[y].b);
  });
  std::vector<Edge> e;
  e.reserve(order.size());
  for (auto idx : order) e.push_back(edges_[idx]);
  edges_ = std::move(e);
  rebuild_incidence();
}

void TissueGraph::rebuild_incidence() {
  for (auto& n : neighbours_) n.clear();
  for (auto& n : incident_) n.clear();
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto [a, b] = edges_[id];
    neighbours_[a].push_back(b);
    neighbours_[b].push_back(a);
    incident_[a].push_back(id);
    incident_[b].push_back(id);
  }
}

std::vector<CellId> lattice_neighbours(const LatticeDims& dims, CellId c) {
  const CellCoord x = cell_coord(dims, c);
  static constexpr int kOffsets[6][3] = {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};
  std::vector<CellId> out;
  out.reserve(6);
  for (const auto& o : kOffsets) {
    const CellCoord y{x.i + o[0], x.j + o[1], x.k + o[2]};
    if (in_bounds(dims, y)) out.push_back(cell_id(dims, y));
  }
  return out;
}

namespace {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

void add_regular_edges(TissueGraph& g, int n, Rng& rng) {
  const auto& dims = g.dims();
  for (CellId c = 0; c < g.cell_count(); ++c) {
    auto nbrs = lattice_neighbours(dims, c);
    std::shuffle(nbrs.begin(), nbrs.end(), rng);
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(n), nbrs.size());
    for (std::size_t t = 0; t < take; ++t) g.add_edge(c, nbrs[t]);
  }
}

// Uniform draw over all cells other than `self`.
CellId random_other(Rng& rng, std::size_t n_cells, CellId self) {
  auto x = static_cast<CellId>(uniform_index(rng, 0, n_cells - 2));
  return x >= self ? x + 1 : x;
}

bool link_random_eligible(TissueGraph& g, CellId c, int cap, Rng& rng) {
  std::vector<CellId> eligible;
  for (CellId x = 0; x < g.cell_count(); ++x) {
    if (x != c && g.degree(x) < cap && !g.has_edge(c, x)) eligible.push_back(x);
  }
  if (eligible.empty()) return false;
  g.add_edge(c, eligible[uniform_index(rng, 0, eligible.size() - 1)]);
  return true;
}

// Every cell with room is already linked to `c`: rewire an edge (x, y) among
// full cells into (c, x) + (c, y), or into (c, x) + (d, y) when c has a single
// free slot and d is another cell with room.
void fill_by_swap(TissueGraph& g, CellId c, int cap, Rng& rng) {
  if (link_random_eligible(g, c, cap, rng)) return;
  CellId d = c;
  if (cap - g.degree(c) < 2) {
    for (CellId x = 0; x < g.cell_count(); ++x) {
      if (x != c && g.degree(x) < cap) {
        d = x;
        break;
      }
    }
    if (d == c) return;
  }
  auto free_for = [&](CellId who, CellId x) { return x != c && x != d && !g.has_edge(who, x); };
  std::vector<std::pair<CellId, CellId>> options;
  for (const auto& e : g.edges()) {
    if (free_for(c, e.a) && free_for(d, e.b)) options.emplace_back(e.a, e.b);
    if (free_for(c, e.b) && free_for(d, e.a)) options.emplace_back(e.b, e.a);
  }
  if (options.empty()) return;
  const auto [x, y] = options[uniform_index(rng, 0, options.size() - 1)];
  g.remove_edge(x, y);
  g.add_edge(c, x);
  g.add_edge(d, y);
}

}  // namespace

TissueGraph build_regular_degree(const LatticeDims& dims, int n, Rng& rng) {
  TissueGraph g(dims);
  add_regular_edges(g, n, rng);
  g.canonicalize();
  return g;
}

TissueGraph build_link_radius(const LatticeDims& dims, double d, int n_max, Rng& rng) {
  TissueGraph g(dims);
  const int reach = static_cast<int>(std::floor(d));
  std::vector<CellId> candidates;
  for (CellId c = 0; c < g.cell_count(); ++c) {
    const CellCoord x = cell_coord(dims, c);
    candidates.clear();
    for (int k = std::max(0, x.k - reach); k <= std::min(dims.k - 1, x.k + reach); ++k) {
      for (int j = std::max(0, x.j - reach); j <= std::min(dims.j - 1, x.j + reach); ++j) {
        for (int i = std::max(0, x.i - reach); i <= std::min(dims.i - 1, x.i + reach); ++i) {
          const CellCoord y{i, j, k};
          if (y == x || euclidean_distance(x, y) > d) continue;
          candidates.push_back(cell_id(dims, y));
        }
      }
    }
    const auto z = uniform_index(rng, 0, static_cast<std::size_t>(std::max(n_max, 0)));
    const auto take = std::min(z, candidates.size());
    for (std::size_t t = 0; t < take; ++t) {
      std::swap(candidates[t], candidates[uniform_index(rng, t, candidates.size() - 1)]);
      g.add_edge(c, candidates[t]);
    }
  }
  g.canonicalize();
  return g;
}

TissueGraph build_shortcut(const LatticeDims& dims, int a, int n, CellId tx, CellId rx, Rng& rng) {
  TissueGraph g(dims);
  add_regular_edges(g, n, rng);
  // The transmitter-receiver shortcut is the only edge allowed past the cap.
  g.add_edge(tx, rx, /*enforce_cap=*/false);
  const auto count = g.cell_count();
  const auto stride = static_cast<std::size_t>(a);
  for (CellId c = 0; c < count; ++c) {
    const std::size_t target = c + stride;
    if (target < count) g.add_edge(c, static_cast<CellId>(target));
  }
  g.canonicalize();
  return g;
}

TissueGraph build_erdos_renyi(const LatticeDims& dims, double p, Rng& rng, int degree_cap) {
  TissueGraph g(dims);
  const std::size_t count = g.cell_count();
  const bool capped = degree_cap > 0;
  const auto slots = std::min<std::size_t>(kMaxDegree, count - 1);
  std::vector<CellId> picks;
  std::vector<CellId> unfilled;  // kept slots the greedy pass could not place
  for (CellId c = 0; c < count; ++c) {
    // `slots` distinct partners, uniformly at random.
    picks.clear();
    while (picks.size() < slots) {
      const CellId x = random_other(rng, count, c);
      if (std::find(picks.begin(), picks.end(), x) == picks.end()) picks.push_back(x);
    }
    for (std::size_t s = 0; s < slots; ++s) {
      const double u = uniform01(rng);
      const bool keep = s == 0 || u < p;
      if (!keep) continue;
      if (!capped) {
        g.add_edge(c, picks[s], false);
        continue;
      }
      if (g.degree(c) >= degree_cap) break;
      if (g.add_edge(c, picks[s])) continue;
      // Partner is full or already linked: redraw among eligible cells.
      if (!link_random_eligible(g, c, degree_cap, rng)) unfilled.push_back(c);
    }
  }
  for (CellId c : unfilled) {
    if (g.degree(c) < degree_cap) fill_by_swap(g, c, degree_cap, rng);
  }
  g.canonicalize();
  return g;
}

TissueGraph build_topology(const LatticeDims& dims, const TopologySpec& spec, CellId tx, CellId rx, Rng& rng) {
  validate(spec);
  struct V {
    const LatticeDims& dims;
    CellId tx, rx;
    Rng& rng;
    TissueGraph operator()(const RegularDegree& t) const { return build_regular_degree(dims, t.n, rng); }
    TissueGraph operator()(const LinkRadius& t) const { return build_link_radius(dims, t.d, t.n_max, rng); }
    TissueGraph operator()(const Shortcut& t) const { return build_shortcut(dims, t.a, t.n, tx, rx, rng); }
    TissueGraph operator()(const ErdosRenyi& t) const { return build_erdos_renyi(dims, t.p, rng); }
  };
  return std::visit(V{dims, tx, rx, rng}, spec);
}

std::vector<int> bfs_distances(const TissueGraph& g, CellId source) {
  std::vector<int> dist(g.cell_count(), -1);
  std::deque<CellId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const CellId u = queue.front();
    queue.pop_front();
    for (CellId v : g.neighbours(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

GraphStats graph_stats(const TissueGraph& g, CellId source) {
  GraphStats s;
  const auto n = g.cell_count();
  if (n == 0) return s;
  s.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);

  std::vector<int> component(n, -1);
  int next = 0;
  for (CellId c = 0; c < n; ++c) {
    if (component[c] >= 0) continue;
    const auto d = bfs_distances(g, c);
    std::size_t size = 0;
    for (CellId v = 0; v < n; ++v) {
      if (d[v] >= 0) {
        component[v] = next;
        ++size;
      }
    }
    s.component_sizes.push_back(size);
    ++next;
  }
  std::sort(s.component_sizes.begin(), s.component_sizes.end(), std::greater<>());

  std::vector<CellId> members;
  for (CellId v = 0; v < n; ++v) {
    if (component[v] == component[source]) members.push_back(v);
  }
  if (members.size() > 1) {
    double total = 0.0;
    for (CellId u : members) {
      const auto d = bfs_distances(g, u);
      for (CellId v : members) total += d[v];
    }
    const double pairs = static_cast<double>(members.size()) * static_cast<double>(members.size() - 1);
    s.mean_shortest_path = total / pairs;
  }
  return s;
}

void write_edge_list(std::ostream& os, const TissueGraph& g) {
  for (const auto& e : g.edges()) os << e.a << ' ' << e.b << '\n';
}

std::string stats_json(const GraphStats& s) {
  nlohmann::json j;
  j["mean_degree"] = s.mean_degree;
  j["mean_shortest_path"] = s.mean_shortest_path;
  j["connected_component_sizes"] = s.component_sizes;
  return j.dump(2);
}

}  // namespace astronet
