#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dgsp {

using Edge = std::pair<int, int>;

enum class DegreeConvention { InDegree, OutDegree };

enum class ParseErrorKind {
  BadHeader,
  MalformedLine,
  IndexOutOfRange,
  DuplicateEdge,
  CountMismatch,
  ZeroWeight,
  UnsupportedFormat,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Records the support of a perturbation: edges added to / removed from a graph.
struct EdgeDelta {
  std::vector<Edge> added;
  std::vector<Edge> removed;
};

/// Immutable-after-construction directed graph. Vertices are 0..n-1, edges are
/// ordered pairs (source, target). Weights are optional; an unweighted graph
/// never materializes the weight map.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n) {
    if (n < 0) throw GraphError("vertex count must be nonnegative");
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool weighted() const { return !weights_.empty(); }

  bool has_edge(int i, int j) const {
    return edge_set_.count(key(i, j)) > 0;
  }

  double weight(int i, int j) const {
    if (!has_edge(i, j)) throw GraphError("no such edge");
    if (weights_.empty()) return 1.0;
    return weights_.at(key(i, j));
  }

  void add_edge(int i, int j, std::optional<double> w = std::nullopt) {
    check_index(i);
    check_index(j);
    if (has_edge(i, j))
      throw GraphError("duplicate edge (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
    if (w) {
      if (*w == 0.0) throw GraphError("zero edge weight");
      if (edges_.empty() || !weights_.empty())
        weights_[key(i, j)] = *w;
      else
        throw GraphError("cannot mix weighted and unweighted edges");
    } else if (!weights_.empty()) {
      throw GraphError("cannot mix weighted and unweighted edges");
    }
    edges_.emplace_back(i, j);
    edge_set_.emplace(key(i, j));
  }

  bool has_self_loop() const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.first == e.second; });
  }

  /// Copy with one more edge. The mutation path used by the destroy loops.
  Digraph with_edge(int i, int j, std::optional<double> w = std::nullopt) const {
    Digraph g(*this);
    g.add_edge(i, j, w);
    return g;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= n_)
      throw GraphError("vertex index " + std::to_string(i) + " out of range");
  }
  std::int64_t key(int i, int j) const {
    return static_cast<std::int64_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::map<std::int64_t, double> weights_;
  std::set<std::int64_t> edge_set_;
};

inline Eigen::MatrixXd adjacency_matrix(const Digraph& g) {
  const int n = g.num_vertices();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : g.edges()) a(i, j) = g.weight(i, j);
  return a;
}

inline Eigen::MatrixXd laplacian_matrix(const Digraph& g, DegreeConvention c) {
  if (g.has_self_loop())
    throw GraphError("Laplacian is not defined for graphs with self-loops");
  const int n = g.num_vertices();
  Eigen::MatrixXd a = adjacency_matrix(g);
  Eigen::VectorXd deg = (c == DegreeConvention::InDegree)
                            ? Eigen::VectorXd(a.colwise().sum().transpose())
                            : Eigen::VectorXd(a.rowwise().sum());
  Eigen::MatrixXd l = -a;
  l.diagonal() += deg;
  return l;
}

inline bool has_path(const Digraph& g, int from, int to) {
  const int n = g.num_vertices();
  if (from < 0 || from >= n || to < 0 || to >= n)
    throw GraphError("vertex index out of range");
  if (from == to) return true;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : g.edges()) adj[i].push_back(j);
  std::vector<bool> seen(n, false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (w == to) return true;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return false;
}

/// Partition of the vertex set under reachability ignoring edge direction.
/// Components are sorted by their smallest vertex; vertices sorted within.
inline std::vector<std::vector<int>> weakly_connected_components(
    const Digraph& g) {
  const int n = g.num_vertices();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : g.edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  int nc = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = nc;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
  return out;
}

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    auto ws = line.find_first_not_of(" \t");
    if (ws == std::string::npos) continue;
    return true;
  }
  return false;
}

}  // namespace detail

/// Edge-list format: first non-comment line "n m", then m lines "i j" or
/// "i j w". '#' starts a comment. Weights are attached iff every edge line
/// carries the third column.
inline Digraph parse_edge_list(std::istream& in) {
  std::string line;
  if (!detail::next_data_line(in, line))
    throw ParseError(ParseErrorKind::BadHeader, "missing \"n m\" header");
  std::istringstream hs(line);
  long long n = -1, m = -1;
  std::string extra;
  if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
    throw ParseError(ParseErrorKind::BadHeader, "malformed header: " + line);

  Digraph g(static_cast<int>(n));
  int have_weight = -1;  // -1 undecided, 0 no, 1 yes
  for (long long e = 0; e < m; ++e) {
    if (!detail::next_data_line(in, line))
      throw ParseError(ParseErrorKind::CountMismatch,
                       "expected " + std::to_string(m) + " edges, got " +
                           std::to_string(e));
    std::istringstream ls(line);
    long long i, j;
    if (!(ls >> i >> j))
      throw ParseError(ParseErrorKind::MalformedLine, "malformed edge line: " + line);
    double w;
    bool has_w = static_cast<bool>(ls >> w);
    if (ls >> extra)
      throw ParseError(ParseErrorKind::MalformedLine, "malformed edge line: " + line);
    if (have_weight == -1)
      have_weight = has_w ? 1 : 0;
    else if (have_weight != (has_w ? 1 : 0))
      throw ParseError(ParseErrorKind::MalformedLine,
                       "inconsistent weight columns at line: " + line);
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw ParseError(ParseErrorKind::IndexOutOfRange,
                       "vertex index out of range: " + line);
    if (g.has_edge(static_cast<int>(i), static_cast<int>(j)))
      throw ParseError(ParseErrorKind::DuplicateEdge, "duplicate edge: " + line);
    if (has_w && w == 0.0)
      throw ParseError(ParseErrorKind::ZeroWeight, "zero weight: " + line);
    if (has_w)
      g.add_edge(static_cast<int>(i), static_cast<int>(j), w);
    else
      g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  if (detail::next_data_line(in, line))
    throw ParseError(ParseErrorKind::CountMismatch,
                     "more edge lines than declared: " + line);
  return g;
}

inline Digraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Digraph& g) {
  out << g.num_vertices() << " " << g.num_edges() << "\n";
  for (const auto& [i, j] : g.edges()) {
    out << i << " " << j;
    if (g.weighted()) out << " " << g.weight(i, j);
    out << "\n";
  }
}

/// Matrix Market coordinate reader (pattern or real, general symmetry only).
/// 1-based indices converted to 0-based.
inline Digraph parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(ParseErrorKind::BadHeader, "empty Matrix Market file");
  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw ParseError(ParseErrorKind::BadHeader,
                     "expected \"%%MatrixMarket matrix coordinate\" banner");
  if (field != "pattern" && field != "real")
    throw ParseError(ParseErrorKind::UnsupportedFormat,
                     "unsupported field type: " + field);
  if (symmetry != "general")
    throw ParseError(ParseErrorKind::UnsupportedFormat,
                     "unsupported symmetry: " + symmetry);
  auto next = [&](std::string& l) {
    while (std::getline(in, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      if (l.empty() || l[0] == '%') continue;
      return true;
    }
    return false;
  };
  if (!next(line))
    throw ParseError(ParseErrorKind::BadHeader, "missing size line");
  std::istringstream ss(line);
  long long rows, cols, nnz;
  if (!(ss >> rows >> cols >> nnz) || rows != cols || rows < 0)
    throw ParseError(ParseErrorKind::BadHeader, "bad size line: " + line);
  Digraph g(static_cast<int>(rows));
  for (long long e = 0; e < nnz; ++e) {
    if (!next(line))
      throw ParseError(ParseErrorKind::CountMismatch, "truncated entry list");
    std::istringstream ls(line);
    long long i, j;
    double w = 1.0;
    if (!(ls >> i >> j) || (field == "real" && !(ls >> w)))
      throw ParseError(ParseErrorKind::MalformedLine, "malformed entry: " + line);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError(ParseErrorKind::IndexOutOfRange,
                       "index out of range: " + line);
    if (g.has_edge(static_cast<int>(i - 1), static_cast<int>(j - 1)))
      throw ParseError(ParseErrorKind::DuplicateEdge, "duplicate entry: " + line);
    if (field == "real") {
      if (w == 0.0)
        throw ParseError(ParseErrorKind::ZeroWeight, "zero entry: " + line);
      g.add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1), w);
    } else {
      g.add_edge(static_cast<int>(i - 1), static_cast<int>(j - 1));
    }
  }
  return g;
}

}  // namespace dgsp
