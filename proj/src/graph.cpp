#include "grafrec/graph.hpp"

#include <algorithm>
#include <utility>

namespace grafrec {

const char* to_string(RepKind kind) {
  switch (kind) {
    case RepKind::EdgeList: return "edge-list";
    case RepKind::AdjacencyMatrix: return "adjacency-matrix";
    case RepKind::IncidenceMatrix: return "incidence-matrix";
    case RepKind::AdjacencyList: return "adjacency-list";
    case RepKind::IncidenceList: return "incidence-list";
  }
  return "?";
}

std::optional<RepKind> rep_kind_from_string(const std::string& name) {
  for (RepKind kind : {RepKind::EdgeList, RepKind::AdjacencyMatrix,
                       RepKind::IncidenceMatrix, RepKind::AdjacencyList,
                       RepKind::IncidenceList}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

const char* to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::NSquared: return "N^2";
    case ComplexityClass::NTimesE: return "N*E";
    case ComplexityClass::NPlusE: return "N+E";
    case ComplexityClass::E: return "E";
  }
  return "?";
}

MemoryProfile memory_profile(RepKind kind, std::size_t n, std::size_t e) {
  MemoryProfile p;
  p.kind = kind;
  p.nodes = n;
  p.arcs = e;
  switch (kind) {
    case RepKind::EdgeList:
      p.cells = 2 * e;
      p.asymptotic_class = ComplexityClass::E;
      break;
    case RepKind::AdjacencyMatrix:
      p.cells = n * n;
      p.asymptotic_class = ComplexityClass::NSquared;
      break;
    case RepKind::IncidenceMatrix:
      p.cells = n * e;
      p.asymptotic_class = ComplexityClass::NTimesE;
      break;
    case RepKind::AdjacencyList:
    case RepKind::IncidenceList:
      // One header cell per node plus one cell per arc endpoint reference.
      p.cells = n + 2 * e;
      p.asymptotic_class = ComplexityClass::NPlusE;
      break;
  }
  return p;
}

Digraph Digraph::from_edges(const std::vector<Arc>& arcs,
                            const std::vector<NodeId>& extra_nodes) {
  Digraph g;

  for (const Arc& a : arcs) {
    if (a.src < 0 || a.dst < 0)
      throw Error(Errc::bad_id, "negative node id in arc (" +
                                    std::to_string(a.src) + "," +
                                    std::to_string(a.dst) + ")");
  }
  for (NodeId id : extra_nodes) {
    if (id < 0)
      throw Error(Errc::bad_id, "negative node id " + std::to_string(id));
  }

  std::vector<NodeId> ids;
  ids.reserve(arcs.size() * 2 + extra_nodes.size());
  for (const Arc& a : arcs) {
    ids.push_back(a.src);
    ids.push_back(a.dst);
  }
  ids.insert(ids.end(), extra_nodes.begin(), extra_nodes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  g.ids_ = std::move(ids);
  g.index_.reserve(g.ids_.size());
  for (Index i = 0; i < g.ids_.size(); ++i) g.index_[g.ids_[i]] = i;

  std::vector<std::pair<IndexArc, std::optional<double>>> indexed;
  indexed.reserve(arcs.size());
  for (const Arc& a : arcs)
    indexed.push_back({{g.index_[a.src], g.index_[a.dst]}, a.weight});
  std::sort(indexed.begin(), indexed.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 1; i < indexed.size(); ++i) {
    if (indexed[i].first == indexed[i - 1].first) {
      const IndexArc& d = indexed[i].first;
      throw Error(Errc::duplicate_arc,
                  "duplicate arc (" + std::to_string(g.ids_[d.first]) + "," +
                      std::to_string(g.ids_[d.second]) + ")");
    }
  }

  EdgeListStore store;
  store.arcs.reserve(indexed.size());
  g.weights_.reserve(indexed.size());
  for (auto& [arc, w] : indexed) {
    store.arcs.push_back(arc);
    g.weights_.push_back(w);
  }
  g.arc_count_ = store.arcs.size();
  g.store_ = std::move(store);
  return g;
}

RepKind Digraph::kind() const noexcept {
  switch (store_.index()) {
    case 0: return RepKind::EdgeList;
    case 1: return RepKind::AdjacencyMatrix;
    case 2: return RepKind::IncidenceMatrix;
    case 3: return RepKind::AdjacencyList;
    default: return RepKind::IncidenceList;
  }
}

// Every store can reproduce the canonical (src,dst)-ascending arc sequence;
// weights_ stays aligned with it across conversions.
std::vector<Digraph::IndexArc> Digraph::canonical_arcs() const {
  std::vector<IndexArc> out;
  out.reserve(arc_count_);
  if (const auto* el = std::get_if<EdgeListStore>(&store_)) {
    out = el->arcs;
  } else if (const auto* am = std::get_if<AdjMatrixStore>(&store_)) {
    for (std::size_t i = 0; i < am->n; ++i)
      for (std::size_t j = 0; j < am->n; ++j)
        if (am->cells[i * am->n + j])
          out.push_back({static_cast<Index>(i), static_cast<Index>(j)});
  } else if (const auto* im = std::get_if<IncMatrixStore>(&store_)) {
    for (std::size_t k = 0; k < im->e; ++k) {
      Index src = 0, dst = 0;
      for (std::size_t i = 0; i < im->n; ++i) {
        std::int8_t cell = im->cells[i * im->e + k];
        if (cell == 2) {
          src = dst = static_cast<Index>(i);
        } else if (cell == -1) {
          src = static_cast<Index>(i);
        } else if (cell == 1) {
          dst = static_cast<Index>(i);
        }
      }
      out.push_back({src, dst});
    }
  } else if (const auto* al = std::get_if<AdjListStore>(&store_)) {
    for (Index v = 0; v < al->out.size(); ++v)
      for (Index w : al->out[v]) out.push_back({v, w});
  } else {
    out = std::get<IncListStore>(store_).arc_table;
  }
  return out;
}

Digraph::Store Digraph::build_store(RepKind kind, std::size_t n,
                                    const std::vector<IndexArc>& arcs) {
  switch (kind) {
    case RepKind::EdgeList: {
      EdgeListStore s;
      s.arcs = arcs;
      return s;
    }
    case RepKind::AdjacencyMatrix: {
      AdjMatrixStore s;
      s.n = n;
      s.cells.assign(n * n, 0);
      for (const auto& [src, dst] : arcs) s.cells[src * n + dst] = 1;
      return s;
    }
    case RepKind::IncidenceMatrix: {
      IncMatrixStore s;
      s.n = n;
      s.e = arcs.size();
      s.cells.assign(n * s.e, 0);
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& [src, dst] = arcs[k];
        if (src == dst) {
          s.cells[src * s.e + k] = 2;
        } else {
          s.cells[src * s.e + k] = -1;
          s.cells[dst * s.e + k] = 1;
        }
      }
      return s;
    }
    case RepKind::AdjacencyList: {
      AdjListStore s;
      s.out.resize(n);
      s.in.resize(n);
      for (const auto& [src, dst] : arcs) {
        s.out[src].push_back(dst);
        s.in[dst].push_back(src);
      }
      for (auto& lst : s.in) std::sort(lst.begin(), lst.end());
      return s;
    }
    case RepKind::IncidenceList: {
      IncListStore s;
      s.arc_table = arcs;
      s.incident.resize(n);
      for (Index k = 0; k < arcs.size(); ++k) {
        const auto& [src, dst] = arcs[k];
        s.incident[src].push_back(k);
        if (dst != src) s.incident[dst].push_back(k);
      }
      return s;
    }
  }
  return EdgeListStore{};
}

Digraph Digraph::convert_to(RepKind target) const {
  Digraph g;
  g.ids_ = ids_;
  g.index_ = index_;
  g.arc_count_ = arc_count_;
  g.weights_ = weights_;
  g.store_ = build_store(target, ids_.size(), canonical_arcs());
  return g;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count_);
  std::size_t k = 0;
  for (const auto& [src, dst] : canonical_arcs()) {
    out.push_back({ids_[src], ids_[dst], weights_[k]});
    ++k;
  }
  return out;
}

bool Digraph::has_node(NodeId id) const { return index_.count(id) != 0; }

bool Digraph::has_arc(NodeId src, NodeId dst) const {
  auto si = index_.find(src);
  auto di = index_.find(dst);
  if (si == index_.end() || di == index_.end()) return false;
  if (const auto* am = std::get_if<AdjMatrixStore>(&store_))
    return am->cells[si->second * am->n + di->second] != 0;
  const AdjacencyInfo info = adjacency(src);
  return std::binary_search(info.out_neighbors.begin(),
                            info.out_neighbors.end(), dst);
}

Digraph::Index Digraph::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(Errc::unknown_node, "unknown node " + std::to_string(id));
  return it->second;
}

AdjacencyInfo Digraph::adjacency(NodeId v) const {
  const Index vi = index_of(v);
  AdjacencyInfo info;

  // Each layout answers through its own structure. Canonical arc order
  // makes every produced list ascending without an extra sort, except for
  // matrix row/column scans which are ascending by index anyway.
  if (const auto* el = std::get_if<EdgeListStore>(&store_)) {
    for (const auto& [src, dst] : el->arcs) {
      if (src == vi) info.out_neighbors.push_back(ids_[dst]);
      if (dst == vi) info.in_neighbors.push_back(ids_[src]);
    }
  } else if (const auto* am = std::get_if<AdjMatrixStore>(&store_)) {
    for (std::size_t j = 0; j < am->n; ++j)
      if (am->cells[vi * am->n + j]) info.out_neighbors.push_back(ids_[j]);
    for (std::size_t i = 0; i < am->n; ++i)
      if (am->cells[i * am->n + vi]) info.in_neighbors.push_back(ids_[i]);
  } else if (const auto* im = std::get_if<IncMatrixStore>(&store_)) {
    for (std::size_t k = 0; k < im->e; ++k) {
      const std::int8_t mark = im->cells[vi * im->e + k];
      if (mark == 0) continue;
      if (mark == 2) {
        info.out_neighbors.push_back(v);
        info.in_neighbors.push_back(v);
        continue;
      }
      // Find the partner row of this arc column.
      for (std::size_t i = 0; i < im->n; ++i) {
        const std::int8_t other = im->cells[i * im->e + k];
        if (other == -mark) {
          if (mark == -1) info.out_neighbors.push_back(ids_[i]);
          else info.in_neighbors.push_back(ids_[i]);
          break;
        }
      }
    }
  } else if (const auto* al = std::get_if<AdjListStore>(&store_)) {
    for (Index w : al->out[vi]) info.out_neighbors.push_back(ids_[w]);
    for (Index w : al->in[vi]) info.in_neighbors.push_back(ids_[w]);
  } else {
    const auto& il = std::get<IncListStore>(store_);
    for (Index k : il.incident[vi]) {
      const auto& [src, dst] = il.arc_table[k];
      if (src == vi) info.out_neighbors.push_back(ids_[dst]);
      if (dst == vi) info.in_neighbors.push_back(ids_[src]);
    }
  }

  info.in_degree = info.in_neighbors.size();
  info.out_degree = info.out_neighbors.size();
  return info;
}

MemoryProfile Digraph::profile() const {
  return memory_profile(kind(), node_count(), arc_count());
}

}  // namespace grafrec
