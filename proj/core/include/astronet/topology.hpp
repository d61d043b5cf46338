#pragma once

// I x J x K cell lattice and the four tissue topologies built on it.
// Cell id = i + I*j + I*J*k with zero-based coordinates.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>
#include <vector>


namespace astronet {

using CellId = std::uint32_t;
using EdgeId = std::uint32_t;
using Rng = std::mt19937_64;

inline constexpr int kMaxDegree = 6;

struct LatticeDims {
  int i = 1;
  int j = 1;
  int k = 1;

  std::size_t size() const { return static_cast<std::size_t>(i) * j * k; }
  bool operator==(const LatticeDims&) const = default;
};

struct CellCoord {
  int i = 0;
  int j = 0;
  int k = 0;

  bool operator==(const CellCoord&) const = default;
};

bool in_bounds(const LatticeDims& d, const CellCoord& c);
CellId cell_id(const LatticeDims& d, const CellCoord& c);
CellCoord cell_coord(const LatticeDims& d, CellId id);
double euclidean_distance(const CellCoord& a, const CellCoord& b);

struct RegularDegree {
  int n = 6;
  bool operator==(const RegularDegree&) const = default;
};
struct LinkRadius {
  double d = 3.0;
  int n_max = 6;
  bool operator==(const LinkRadius&) const = default;
};
struct Shortcut {
  int a = 5;
  int n = 6;
  bool operator==(const Shortcut&) const = default;
};
struct ErdosRenyi {
  double p = 0.3;
  bool operator==(const ErdosRenyi&) const = default;
};

using TopologySpec = std::variant<RegularDegree, LinkRadius, Shortcut, ErdosRenyi>;

/// regular_degree | link_radius | shortcut | erdos_renyi
std::string topology_kind(const TopologySpec& spec);
/// Short label used in tables, e.g. "link_radius(3)".
std::string topology_label(const TopologySpec& spec);
/// Throws ConfigError on out-of-range fields.
void validate(const TopologySpec& spec);

struct Edge {
  CellId a = 0;  // a < b
  CellId b = 0;
  bool operator==(const Edge&) const = default;
};

class TissueGraph {
 public:
  explicit TissueGraph(LatticeDims dims);

  const LatticeDims& dims() const { return dims_; }
  std::size_t cell_count() const { return neighbours_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<CellId>& neighbours(CellId c) const { return neighbours_[c]; }
  const std::vector<EdgeId>& incident_edges(CellId c) const { return incident_[c]; }
  int degree(CellId c) const { return static_cast<int>(neighbours_[c].size()); }
  bool has_edge(CellId a, CellId b) const;

  /// Adds {a, b} unless it is a self-loop or duplicate, or (with
  /// `enforce_cap`) either endpoint already has kMaxDegree neighbours.
  bool add_edge(CellId a, CellId b, bool enforce_cap = true);
  bool remove_edge(CellId a, CellId b);
  /// Sorts edges by (a, b) so edge ids are independent of insertion order.
  void canonicalize();

 private:
  void rebuild_incidence();

  LatticeDims dims_;
  std::vector<Edge> edges_;
  std::vector<std::vector<CellId>> neighbours_;
  std::vector<std::vector<EdgeId>> incident_;
};

/// Lattice neighbours at unit distance (no wrap-around).
std::vector<CellId> lattice_neighbours(const LatticeDims& dims, CellId c);

TissueGraph build_regular_degree(const LatticeDims& dims, int n, Rng& rng);
TissueGraph build_link_radius(const LatticeDims& dims, double d, int n_max, Rng& rng);
TissueGraph build_shortcut(const LatticeDims& dims, int a, int n, CellId tx, CellId rx, Rng& rng);
/// `degree_cap` <= 0 disables the cap (used to check the sampling rule alone).
TissueGraph build_erdos_renyi(const LatticeDims& dims, double p, Rng& rng, int degree_cap = kMaxDegree);

TissueGraph build_topology(const LatticeDims& dims, const TopologySpec& spec, CellId tx, CellId rx, Rng& rng);

struct GraphStats {
  double mean_degree = 0.0;
  double mean_shortest_path = 0.0;            // over the component containing `source`
  std::vector<std::size_t> component_sizes;   // descending
};

GraphStats graph_stats(const TissueGraph& g, CellId source = 0);

/// Hop distances from `source`; -1 when unreachable.
std::vector<int> bfs_distances(const TissueGraph& g, CellId source);

/// One "a b" line per edge.
void write_edge_list(std::ostream& os, const TissueGraph& g);
std::string stats_json(const GraphStats& s);

}  // namespace astronet
