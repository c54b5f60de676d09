#include "gtrec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <set>
#include <sstream>

#include "gtrec/error.hpp"

namespace gtrec {
namespace {

struct Node {
  std::string label;
  std::string species;
  std::string event;  // from [&ev=...], empty if absent
  bool transfer = false;
  bool group = false;  // written with parentheses
  double length = 1.0;
  bool has_length = false;
  int line = 1, column = 1;
  std::vector<std::unique_ptr<Node>> kids;
};

class NewickReader {
 public:
  NewickReader(std::string_view text, bool gene_dialect) : s_(text), gene_(gene_dialect) {}

  std::unique_ptr<Node> read() {
    skip();
    auto root = subtree();
    skip();
    expect(';');
    skip();
    if (i_ != s_.size()) fail("unexpected text after ';'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }

  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
  }
  static bool is_name_char(char c) {
    return c != '\0' && !std::isspace(static_cast<unsigned char>(c)) &&
           std::string_view("()[],;:@#'").find(c) == std::string_view::npos;
  }

  std::string name() {
    std::string out;
    if (peek() == '\'') {
      advance();
      while (true) {
        if (i_ >= s_.size()) fail("unterminated quoted name");
        if (peek() == '\'') {
          advance();
          if (peek() != '\'') break;
        }
        out += peek();
        advance();
      }
      return out;
    }
    while (is_name_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  std::unique_ptr<Node> subtree() {
    auto node = std::make_unique<Node>();
    node->line = line_;
    node->column = col_;
    if (gene_ && peek() == '#') {
      advance();
      if (peek() != 'T') fail("expected 'T' after '#'");
      advance();
      node->transfer = true;
      skip();
    }
    if (peek() == '(') {
      node->group = true;
      advance();
      skip();
      node->kids.push_back(subtree());
      skip();
      while (peek() == ',') {
        advance();
        skip();
        node->kids.push_back(subtree());
        skip();
      }
      expect(')');
      skip();
      node->label = name();
    } else {
      node->label = name();
      if (node->label.empty()) fail("expected a name or '('");
    }
    skip();
    if (peek() == '@') {
      if (!gene_) fail("'@' is only allowed in gene trees");
      if (node->group) fail("only leaves carry a species");
      advance();
      node->species = name();
      if (node->species.empty()) fail("expected a species name after '@'");
      skip();
    }
    while (peek() == '[' || peek() == ':') {
      if (peek() == '[') {
        comment(*node);
      } else {
        advance();
        skip();
        length(*node);
      }
      skip();
    }
    return node;
  }

  void comment(Node& node) {
    const int line = line_, column = col_;
    advance();
    std::string body;
    while (peek() != ']') {
      if (i_ >= s_.size()) throw ParseError("unterminated '['", line, column);
      body += peek();
      advance();
    }
    advance();
    if (body.empty() || body[0] != '&') return;  // plain comment
    if (!gene_) return;
    if (body.rfind("&ev=", 0) != 0) throw ParseError("unknown annotation [" + body + "]", line, column);
    const std::string ev = body.substr(4);
    if (ev != "s" && ev != "d" && ev != "t") {
      throw ParseError("event must be s, d or t, got '" + ev + "'", line, column);
    }
    if (!node.event.empty()) throw ParseError("event given twice", line, column);
    node.event = ev;
  }

  void length(Node& node) {
    std::size_t start = i_;
    while (i_ < s_.size() && std::string_view("0123456789+-.eE").find(s_[i_]) != std::string_view::npos) {
      advance();
    }
    const std::string text(s_.substr(start, i_ - start));
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
      fail("malformed branch length");
    }
    node.length = v;
    node.has_length = true;
  }

  std::string_view s_;
  bool gene_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

// One-member groups without annotation or label disappear into their child.
std::unique_ptr<Node> collapse_transparent(std::unique_ptr<Node> n) {
  for (auto& k : n->kids) k = collapse_transparent(std::move(k));
  if (n->group && n->kids.size() == 1 && n->event.empty() && n->label.empty() && !n->has_length) {
    auto child = std::move(n->kids.front());
    child->transfer = child->transfer || n->transfer;
    return child;
  }
  return n;
}

template <class Fn>
void preorder(const Node& n, VertexId parent, Fn&& fn) {
  std::vector<std::pair<const Node*, VertexId>> stack{{&n, parent}};
  VertexId next = 0;
  while (!stack.empty()) {
    auto [node, p] = stack.back();
    stack.pop_back();
    const VertexId id = next++;
    fn(*node, id, p);
    for (auto it = node->kids.rbegin(); it != node->kids.rend(); ++it) stack.emplace_back(it->get(), id);
  }
}

std::string quote(const std::string& name) {
  bool plain = !name.empty();
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) ||
        std::string_view("()[],;:@#'").find(c) != std::string_view::npos) {
      plain = false;
    }
  }
  if (plain) return name;
  std::string out = "'";
  for (char c : name) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Shortest text that parses back to the same value.
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
    if (std::strtod(tmp, nullptr) == v) return tmp;
  }
  return buf;
}

}  // namespace

std::map<std::string, std::string> parse_sidecar(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("expected `gene<TAB>species`", line_no, 1);
    }
    auto gene = line.substr(0, tab);
    if (!out.emplace(gene, line.substr(tab + 1)).second) {
      throw ParseError("gene '" + gene + "' listed twice", line_no, 1);
    }
  }
  return out;
}

GeneTree parse_gene_tree(std::string_view text, const std::map<std::string, std::string>* sidecar) {
  auto root = collapse_transparent(NewickReader(text, true).read());
  if (root->transfer) throw ParseError("the root cannot be reached by a transfer edge", root->line, root->column);
  std::vector<VertexId> parents;
  std::vector<std::string> labels;
  std::vector<Event> events;
  std::vector<bool> transfer;
  std::vector<std::string> species;
  preorder(*root, kNoVertex, [&](const Node& n, VertexId, VertexId p) {
    parents.push_back(p);
    labels.push_back(n.label);
    transfer.push_back(n.transfer);
    const bool leaf = n.kids.empty();
    if (leaf && !n.event.empty()) throw ParseError("leaves carry no event", n.line, n.column);
    if (!leaf && n.event.empty()) {
      throw ParseError("interior vertex without [&ev=s|d|t]", n.line, n.column);
    }
    events.push_back(leaf ? Event::kNone : event_from_code(n.event[0]));
    std::string sp = n.species;
    if (leaf && sidecar) {
      auto it = sidecar->find(n.label);
      if (it != sidecar->end()) {
        if (!sp.empty() && sp != it->second) {
          throw ParseError("gene '" + n.label + "' has conflicting species '" + sp + "' and '" +
                               it->second + "'", n.line, n.column);
        }
        sp = it->second;
      }
    }
    if (leaf && sp.empty()) throw ParseError("gene '" + n.label + "' has no species", n.line, n.column);
    species.push_back(sp);
  });
  for (VertexId v = 0; v < parents.size(); ++v) {
    if (transfer[v] && events[parents[v]] != Event::kTransfer) {
      throw ParseError("transfer edge into '" + (labels[v].empty() ? "#" + std::to_string(v) : labels[v]) +
                           "' leaves a vertex not labeled t", 1, 1);
    }
  }
  return GeneTree(RootedTree(std::move(parents), std::move(labels)), std::move(events),
                  std::move(transfer), std::move(species));
}

namespace {

// `open` is written before an interior vertex's '(' and `inner` after its ')'.
template <class Leaf, class Inner, class Open>
std::string write_newick(const RootedTree& t, Leaf&& leaf, Inner&& inner, Open&& open) {
  std::string out;
  // Iterative to cope with deep caterpillars.
  std::vector<std::pair<VertexId, std::size_t>> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = t.children(v);
    if (kids.empty()) {
      out += leaf(v);
      stack.pop_back();
      continue;
    }
    if (next == 0) {
      out += open(v);
      out += '(';
    }
    if (next == kids.size()) {
      out += ')';
      out += inner(v);
      stack.pop_back();
      continue;
    }
    if (next > 0) out += ',';
    const VertexId c = kids[next++];
    stack.emplace_back(c, 0);
  }
  return out + ";";
}

}  // namespace

std::string serialize_gene_tree(const GeneTree& g) {
  const RootedTree& t = g.tree();
  auto prefix = [&](VertexId v) { return g.is_transfer_edge(v) ? std::string("#T") : std::string(); };
  return write_newick(
      t,
      [&](VertexId v) { return prefix(v) + quote(g.gene_name(v)) + "@" + quote(g.species_of(v)); },
      [&](VertexId v) {
        std::string s = t.label(v).empty() ? "" : quote(t.label(v));
        return s + "[&ev=" + event_code(g.event(v)) + "]";
      },
      prefix);
}

std::string serialize_gene_tree_nhx(const GeneTree& g) {
  const RootedTree& t = g.tree();
  auto te = [&](VertexId v) { return g.is_transfer_edge(v) ? std::string(":TE=1") : std::string(); };
  std::string out = write_newick(
      t,
      [&](VertexId v) { return quote(g.gene_name(v)) + "[&&NHX:S=" + g.species_of(v) + te(v) + "]"; },
      [&](VertexId v) {
        std::string tags;
        switch (g.event(v)) {
          case Event::kSpeciation: tags = "D=N"; break;
          case Event::kDuplication: tags = "D=Y"; break;
          case Event::kTransfer: tags = "D=N:H=Y"; break;
          case Event::kNone: break;
        }
        return (t.label(v).empty() ? "" : quote(t.label(v))) + "[&&NHX:" + tags + te(v) + "]";
      },
      [](VertexId) { return std::string(); });
  return out;
}

SpeciesTreeDocument parse_species_tree(std::string_view text) {
  auto root = NewickReader(text, false).read();
  SpeciesTreeDocument doc;
  std::vector<VertexId> parents;
  std::vector<std::string> labels;
  std::set<std::string> seen;
  preorder(*root, kNoVertex, [&](const Node& n, VertexId, VertexId p) {
    if (n.group && n.kids.empty()) throw ParseError("empty group", n.line, n.column);
    if (n.kids.empty() && n.label.empty()) throw ParseError("unnamed species", n.line, n.column);
    if (n.kids.empty() && !seen.insert(n.label).second) {
      throw ParseError("duplicate species '" + n.label + "'", n.line, n.column);
    }
    if (n.has_length && !(n.length > 0)) throw ParseError("branch lengths must be positive", n.line, n.column);
    parents.push_back(p);
    labels.push_back(n.label);
    doc.length.push_back(n.length);
  });
  doc.tree = RootedTree(std::move(parents), std::move(labels));
  for (VertexId v = 0; v < doc.tree.size(); ++v) {
    if (v != doc.tree.root() && doc.tree.out_degree(v) == 1) {
      DomainError("species tree vertex " + std::to_string(v) + " has a single child");
    }
  }
  return doc;
}

PlantedSpeciesTree to_planted(const SpeciesTreeDocument& doc) {
  return doc.planted() ? PlantedSpeciesTree::from_planted(doc.tree) : plant(doc.tree);
}

TimedSpeciesTree to_timed(const SpeciesTreeDocument& doc) {
  TimedSpeciesTree out{doc.tree, std::vector<double>(doc.tree.size(), 0.0)};
  for (VertexId v : doc.tree.preorder()) out.time[v] = out.branch_start(v) + doc.length[v];
  check_times(out);
  return out;
}

std::string serialize_species_tree(const RootedTree& s) {
  if (s.size() == 1) return quote(s.label(s.root())) + ";";
  return write_newick(
      s, [&](VertexId v) { return quote(s.label(v)); },
      [&](VertexId v) { return s.label(v).empty() ? std::string() : quote(s.label(v)); },
      [](VertexId) { return std::string(); });
}

std::string serialize_species_tree(const PlantedSpeciesTree& s, bool planted) {
  return serialize_species_tree(planted ? s.tree() : s.unplanted());
}

namespace {

std::string species_ref(const PlantedSpeciesTree& s, VertexId v) {
  const RootedTree& t = s.tree();
  return t.is_leaf(v) ? quote(t.label(v)) : "@" + std::to_string(v);
}

}  // namespace

ReconciliationMap parse_map(std::string_view text, const GeneTree& g, const PlantedSpeciesTree& s) {
  const RootedTree& st = s.tree();
  ReconciliationMap mu(g.size(), Locus{});
  std::vector<bool> seen(g.size(), false);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto ref = [&](const std::string& tok, bool gene) -> VertexId {
    if (tok.size() > 1 && tok[0] == '@') {
      VertexId id = 0;
      auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), id);
      const std::size_t limit = gene ? g.size() : st.size();
      if (ec != std::errc() || ptr != tok.data() + tok.size() || id >= limit) {
        throw ParseError("bad vertex reference '" + tok + "'", line_no, 1);
      }
      return id;
    }
    auto v = gene ? g.tree().find_label(tok) : st.find_label(tok);
    if (!v || (gene && !g.tree().is_leaf(*v))) throw ParseError("unknown name '" + tok + "'", line_no, 1);
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3 || (tok[1] != "vertex" && tok[1] != "edge")) {
      throw ParseError("expected `<gene-ref> vertex|edge <species-ref>`", line_no, 1);
    }
    const VertexId x = ref(tok[0], true);
    const VertexId y = ref(tok[2], false);
    if (seen[x]) throw ParseError("gene vertex mapped twice", line_no, 1);
    seen[x] = true;
    if (tok[1] == "vertex") {
      mu[x] = Locus::vertex(y);
    } else {
      if (st.parent(y) == kNoVertex) throw ParseError("the root has no edge above it", line_no, 1);
      mu[x] = Locus::edge(st.parent(y), y);
    }
  }
  for (VertexId x = 0; x < g.size(); ++x) {
    if (!seen[x]) DomainError("the map leaves gene vertex " + std::to_string(x) + " unassigned");
  }
  return mu;
}

std::string serialize_map(const GeneTree& g, const PlantedSpeciesTree& s, const ReconciliationMap& mu) {
  std::string out;
  for (VertexId x = 0; x < g.size(); ++x) {
    out += g.tree().is_leaf(x) ? quote(g.gene_name(x)) : "@" + std::to_string(x);
    out += mu[x].is_vertex() ? " vertex " : " edge ";
    out += species_ref(s, mu[x].lower);
    out += '\n';
  }
  return out;
}

std::string serialize_history(const TrueHistory& h) {
  const RootedTree& t = h.genes;
  const RootedTree& st = h.species.tree;
  auto tag = [&](VertexId v) {
    std::string sp = st.label(h.branch[v]).empty() ? "@" + std::to_string(h.branch[v]) : st.label(h.branch[v]);
    return "[&ev=" + std::string(1, history_event_code(h.events[v])) + ",time=" + format_number(h.time[v]) +
           ",branch=" + sp + "]";
  };
  auto prefix = [&](VertexId v) { return h.transfer_in[v] ? std::string("#T") : std::string(); };
  return write_newick(
      t,
      [&](VertexId v) {
        const std::string name = h.events[v] == HistoryEvent::kExtant ? quote(h.names[v])
                                                                      : "lost" + std::to_string(v);
        return prefix(v) + name + tag(v);
      },
      [&](VertexId v) { return tag(v); }, prefix);
}

}  // namespace gtrec
