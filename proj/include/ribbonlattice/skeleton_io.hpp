#pragma once

// Text format for skeletons:
//
//   # comment
//   ends: 6
//   nx: (0 1 2)(3 4 5)
//   op: (0 3)(1 2)(4 5)
//   heads: 0 1 4
//   labels: 4:-X 7:[[1,1],[0,1]]
//   disks: 4:E6
//
// Every end must occur exactly once in each of nx and op; fixed points are
// written as 1-cycles.  `labels: e:L` means h_e + L h_{op e} = 0, so a label
// keyed by a tail end is stored inverted.  Unlabelled edges carry Y.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ribbonlattice/generalized.hpp"
#include "ribbonlattice/skeleton.hpp"

namespace rl {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

struct SkeletonFile {
  Skeleton skeleton;
  std::optional<std::vector<int>> heads;
  std::map<int, GL2> labels;  // keyed by end, as written
  std::vector<ShadedDisk> disks;

  bool is_generalized() const {
    if (!labels.empty() || !disks.empty()) return true;
    for (const auto& v : skeleton.vertices())
      if (v.size() != 3) return true;
    return false;
  }
};

namespace detail {

class LineCursor {
 public:
  LineCursor(const std::string& text, int line, int col) : s_(text), line_(line), base_(col) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  char get() { return i_ < s_.size() ? s_[i_++] : '\0'; }
  int col() const { return base_ + static_cast<int>(i_); }
  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col(), msg); }
  [[noreturn]] void fail_at(int col, const std::string& msg) const { throw ParseError(line_, col, msg); }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  long long integer() {
    skip_ws();
    std::size_t start = i_;
    if (peek() == '-' || peek() == '+') ++i_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      i_ = start;
      fail("expected an integer");
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    if (i_ - start > 15) fail_at(base_ + static_cast<int>(start), "integer too large");
    return std::stoll(s_.substr(start, i_ - start));
  }

  int end_index(int n) {
    skip_ws();
    int at = col();
    long long x = integer();
    if (x < 0 || x >= n) fail_at(at, "end " + std::to_string(x) + " out of range 0.." + std::to_string(n - 1));
    return static_cast<int>(x);
  }

 private:
  const std::string& s_;
  int line_, base_;
  std::size_t i_ = 0;
};

// (a b c)(d e) ... with each end of [0, n) exactly once.
inline Perm parse_cycles(LineCursor& c, int n) {
  Perm p(n, -1);
  while (!c.done()) {
    c.expect('(');
    std::vector<int> cyc;
    while (true) {
      c.skip_ws();
      if (c.peek() == ')') {
        c.get();
        break;
      }
      if (c.peek() == '\0') c.fail("unterminated cycle");
      int at = c.col();
      int x = c.end_index(n);
      if (p[x] >= 0) c.fail_at(at, "end " + std::to_string(x) + " listed twice");
      for (int y : cyc)
        if (y == x) c.fail_at(at, "end " + std::to_string(x) + " listed twice");
      cyc.push_back(x);
    }
    if (cyc.empty()) c.fail("empty cycle");
    for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  for (int i = 0; i < n; ++i)
    if (p[i] < 0) c.fail("end " + std::to_string(i) + " is missing (write fixed points as 1-cycles)");
  return p;
}

// [-] factors, a factor being X or Y with an optional ^exponent, or a
// literal [[a,b],[c,d]].
inline GL2 parse_label(LineCursor& c) {
  c.skip_ws();
  int at = c.col();
  GL2 g;
  bool neg = false;
  if (c.peek() == '-') {
    c.get();
    neg = true;
  }
  bool any = false;
  while (true) {
    char ch = c.peek();
    if (ch == 'X' || ch == 'Y') {
      c.get();
      GL2 f = ch == 'X' ? mat_X() : mat_Y();
      long long e = 1;
      if (c.peek() == '^') {
        c.get();
        e = c.integer();
      }
      g = g * f.pow(e);
      any = true;
    } else if (ch == '[') {
      Int v[4];
      c.expect('[');
      c.expect('[');
      v[0] = Int(std::to_string(c.integer()));
      c.expect(',');
      v[1] = Int(std::to_string(c.integer()));
      c.expect(']');
      c.expect(',');
      c.expect('[');
      v[2] = Int(std::to_string(c.integer()));
      c.expect(',');
      v[3] = Int(std::to_string(c.integer()));
      c.expect(']');
      c.expect(']');
      g = g * GL2{v[0], v[1], v[2], v[3]};
      any = true;
    } else {
      break;
    }
  }
  if (!any) c.fail("expected a label such as X, -XYX or [[a,b],[c,d]]");
  if (g.det() != 1) c.fail_at(at, "label is not in SL(2,Z)");
  return neg ? -g : g;
}

inline std::string trim_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

}  // namespace detail

inline SkeletonFile parse_skeleton(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0, last_line = 0;
  std::optional<int> n;
  std::optional<Perm> nx, op;
  SkeletonFile f;
  std::map<std::string, int> seen_keys;
  while (std::getline(in, raw)) {
    ++lineno;
    last_line = lineno;
    std::string line = detail::trim_comment(raw);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t colon = line.find(':', first);
    if (colon == std::string::npos) throw ParseError(lineno, static_cast<int>(first) + 1, "expected 'key: value'");
    std::string key = line.substr(first, colon - first);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    if (seen_keys.count(key))
      throw ParseError(lineno, static_cast<int>(first) + 1, "duplicate key '" + key + "'");
    seen_keys[key] = lineno;
    std::string rest = line.substr(colon + 1);
    detail::LineCursor c(rest, lineno, static_cast<int>(colon) + 2);
    auto need_n = [&]() {
      if (!n) throw ParseError(lineno, static_cast<int>(first) + 1, "'" + key + "' before 'ends'");
      return *n;
    };
    if (key == "ends") {
      c.skip_ws();
      int at = c.col();
      long long v = c.integer();
      if (v <= 0 || v > 100000) c.fail_at(at, "ends must be between 1 and 100000");
      if (!c.done()) c.fail("trailing characters");
      n = static_cast<int>(v);
    } else if (key == "nx") {
      nx = detail::parse_cycles(c, need_n());
    } else if (key == "op") {
      op = detail::parse_cycles(c, need_n());
    } else if (key == "heads") {
      int m = need_n();
      std::vector<int> h;
      while (!c.done()) h.push_back(c.end_index(m));
      f.heads = h;
    } else if (key == "labels") {
      int m = need_n();
      while (!c.done()) {
        int at = c.col();
        int e = c.end_index(m);
        c.expect(':');
        if (f.labels.count(e)) c.fail_at(at, "end " + std::to_string(e) + " labelled twice");
        f.labels[e] = detail::parse_label(c);
      }
    } else if (key == "disks") {
      int m = need_n();
      while (!c.done()) {
        int e = c.end_index(m);
        c.expect(':');
        c.skip_ws();
        int at = c.col();
        std::string name;
        while (!c.done() && !std::isspace(static_cast<unsigned char>(c.peek()))) name += c.get();
        auto kind = parse_ekind(name);
        if (!kind) c.fail_at(at, "unknown fiber kind '" + name + "'");
        f.disks.push_back({e, *kind});
      }
    } else {
      throw ParseError(lineno, static_cast<int>(first) + 1, "unknown key '" + key + "'");
    }
  }
  if (!n) throw ParseError(last_line + 1, 1, "missing 'ends'");
  if (!nx) throw ParseError(last_line + 1, 1, "missing 'nx'");
  if (!op) throw ParseError(last_line + 1, 1, "missing 'op'");
  f.skeleton = Skeleton(*op, *nx);
  return f;
}

inline SkeletonFile read_skeleton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_skeleton(ss.str());
}

inline std::string cycles_string(const Perm& p) {
  std::string s;
  std::vector<char> done(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i]) continue;
    s += "(";
    for (int j = static_cast<int>(i); !done[j]; j = p[j]) {
      done[j] = 1;
      s += (s.back() == '(' ? "" : " ") + std::to_string(j);
    }
    s += ")";
  }
  return s;
}

inline std::string label_string(const GL2& g) {
  if (g == mat_X()) return "X";
  if (g == -mat_X()) return "-X";
  if (g == mat_Y()) return "Y";
  if (g == -mat_Y()) return "-Y";
  return "[[" + g.a.get_str() + "," + g.b.get_str() + "],[" + g.c.get_str() + "," + g.d.get_str() + "]]";
}

inline std::string print_skeleton(const Skeleton& sk, const std::optional<Orientation>& o = std::nullopt) {
  std::ostringstream os;
  os << "ends: " << sk.n_ends() << "\n";
  os << "nx: " << cycles_string(sk.nx_perm()) << "\n";
  os << "op: " << cycles_string(sk.op_perm()) << "\n";
  if (o) {
    os << "heads:";
    for (int h : o->head) os << " " << h;
    os << "\n";
  }
  return os.str();
}

inline std::string print_skeleton(const LabelledSkeleton& l) {
  std::ostringstream os;
  os << print_skeleton(l.graph, Orientation{l.head});
  std::string labels;
  for (int e = 0; e < l.graph.n_edges(); ++e)
    if (!(l.label[e] == mat_Y())) labels += " " + std::to_string(l.head[e]) + ":" + label_string(l.label[e]);
  if (!labels.empty()) os << "labels:" << labels << "\n";
  if (!l.disks.empty()) {
    os << "disks:";
    for (const auto& d : l.disks) os << " " << d.end << ":" << ekind_name(d.kind);
    os << "\n";
  }
  return os.str();
}

// A skeleton is recognized as a pseudo-tree when each vertex carries at
// most one loop and the remaining edges form a tree.  The default
// orientation then makes every loop fiber A0* and points tree edges toward
// the vertex of end 0.
inline std::optional<Orientation> pseudo_tree_orientation(const Skeleton& sk) {
  const int V = sk.n_vertices();
  std::vector<int> loops(V, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbour, end at this vertex)
  int tree_edges = 0;
  for (const auto& [x, y] : sk.edges()) {
    int a = sk.vertex_of(x), b = sk.vertex_of(y);
    if (a == b) {
      if (++loops[a] > 1) return std::nullopt;
    } else {
      ++tree_edges;
      adj[a].push_back({b, x});
      adj[b].push_back({a, y});
    }
  }
  if (tree_edges != V - 1) return std::nullopt;
  Orientation o{std::vector<int>(sk.n_edges(), -1)};
  std::vector<char> seen(V, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [w, end] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        o.head[sk.edge_of(end)] = end;  // parent side
        q.push(w);
      }
  }
  if (reached != V) return std::nullopt;
  for (const auto& [x, y] : sk.edges()) {
    if (sk.vertex_of(x) != sk.vertex_of(y)) continue;
    int e = sk.edge_of(x);
    // the monogon is the region {z} with nx^-1(op z) = z
    int mono = sk.nx_inv(sk.op(x)) == x ? x : y;
    for (int h : {x, y}) {
      o.head[e] = h;
      Path p = boundary_path(Region{{mono}});
      if (monodromy(sk, o, p) == GL2{1, 1, 0, 1}) break;
    }
  }
  return o;
}

// Resolves the optional head list and labels into a labelled skeleton.
// Without heads, only pseudo-trees are accepted.
inline LabelledSkeleton resolve(const SkeletonFile& f) {
  const Skeleton& sk = f.skeleton;
  for (int i = 0; i < sk.n_ends(); ++i) {
    if (sk.op(i) == i) throw InvalidSkeleton("op has a fixed point at end " + std::to_string(i));
    if (sk.op(sk.op(i)) != i) throw InvalidSkeleton("op is not an involution");
  }
  Orientation o;
  if (f.heads) {
    if (static_cast<int>(f.heads->size()) != sk.n_edges())
      throw InvalidSkeleton("heads lists " + std::to_string(f.heads->size()) + " ends for " +
                            std::to_string(sk.n_edges()) + " edges");
    o = orientation_from_heads(sk, *f.heads);
  } else {
    bool cubic = true;
    for (const auto& v : sk.vertices()) cubic = cubic && v.size() == 3;
    std::optional<Orientation> po;
    if (cubic && is_connected(sk)) po = pseudo_tree_orientation(sk);
    if (!po) throw InvalidSkeleton("no heads given and the skeleton is not a pseudo-tree");
    o = *po;
  }
  LabelledSkeleton l{sk, o.head, std::vector<GL2>(sk.n_edges(), mat_Y()), f.disks};
  for (const auto& [end, L] : f.labels) {
    int e = sk.edge_of(end);
    l.label[e] = l.head[e] == end ? L : L.inverse();
  }
  for (const auto& d : f.disks)
    if (d.end < 0 || d.end >= sk.n_ends()) throw InvalidSkeleton("disk end out of range");
  validate(l);
  return l;
}

}  // namespace rl
