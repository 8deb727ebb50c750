#include "fsr/fsr_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fsr {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

const Complex& FsrDocument::base() const { return rule ? rule->base : *complex; }

namespace {

bool id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> split_words(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

class Parser {
 public:
  FsrDocument run(std::string_view text) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
      ++line_no;
      line_ = line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      handle(line);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!named_) throw ParseError(line_, 1, "missing 'fsr NAME' header");
    if (!have_base_) throw ParseError(line_, 1, "missing 'complex base' block");
    FsrDocument doc;
    doc.name = rule_.name;
    if (have_refined_) {
      doc.rule = std::move(rule_);
    } else {
      if (have_maps_) throw ParseError(line_, 1, "carrier or map lines need a refined complex");
      doc.complex = std::move(rule_.base);
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(int column, const std::string& message) const { throw ParseError(line_, column, message); }

  void expect_arity(const std::vector<Token>& w, std::size_t lo, std::size_t hi) const {
    if (w.size() < lo) fail(w.empty() ? 1 : w.back().column, "too few fields for '" + w[0].text + "'");
    if (w.size() > hi) fail(w[hi].column, "unexpected '" + w[hi].text + "'");
  }

  void check_id(const Token& t) const {
    if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), id_char))
      fail(t.column, "invalid id '" + t.text + "'");
  }

  Complex& current(const Token& where) {
    if (section_ == 0) fail(where.column, "'" + where.text + "' outside a complex block");
    return section_ == 1 ? rule_.base : rule_.refined;
  }

  CellRef lookup(const Complex& c, const Token& t, const char* what) const {
    const auto ref = c.find(t.text);
    if (!ref) fail(t.column, std::string("undeclared ") + what + " '" + t.text + "'");
    return *ref;
  }

  void expect_arrow(const Token& t) const {
    if (t.text != "->") fail(t.column, "expected '->' but found '" + t.text + "'");
  }

  void ensure_maps() {
    if (!have_refined_) fail(1, "carrier or map line before 'complex refined'");
    if (!maps_sized_) {
      rule_.resize_maps();
      maps_sized_ = true;
    }
  }

  void handle(const std::string& line) {
    const std::vector<Token> w = split_words(line);
    if (w.empty()) return;
    const std::string& kw = w[0].text;
    if (!named_ && kw != "fsr") fail(w[0].column, "expected 'fsr NAME' first");
    if (kw == "fsr") {
      if (named_) fail(w[0].column, "second 'fsr' header");
      expect_arity(w, 2, 2);
      check_id(w[1]);
      rule_.name = w[1].text;
      named_ = true;
    } else if (kw == "complex") {
      expect_arity(w, 2, 2);
      if (maps_sized_) fail(w[0].column, "complex block after carrier or map lines");
      if (w[1].text == "base") {
        if (have_base_) fail(w[1].column, "duplicate base block");
        have_base_ = true;
        section_ = 1;
      } else if (w[1].text == "refined") {
        if (!have_base_) fail(w[1].column, "refined block before base block");
        if (have_refined_) fail(w[1].column, "duplicate refined block");
        have_refined_ = true;
        section_ = 2;
      } else {
        fail(w[1].column, "expected 'base' or 'refined'");
      }
    } else if (kw == "vertex") {
      expect_arity(w, 2, 3);
      Complex& c = current(w[0]);
      check_id(w[1]);
      if (w.size() == 3 && w[2].text != "marked") fail(w[2].column, "expected 'marked'");
      guarded(w[1], [&] { c.add_vertex(w[1].text, w.size() == 3); });
    } else if (kw == "edge") {
      expect_arity(w, 4, 4);
      Complex& c = current(w[0]);
      check_id(w[1]);
      const int from = c.vertex_index(w[2].text);
      if (from < 0) fail(w[2].column, "undeclared vertex '" + w[2].text + "'");
      const int to = c.vertex_index(w[3].text);
      if (to < 0) fail(w[3].column, "undeclared vertex '" + w[3].text + "'");
      guarded(w[1], [&] { c.add_edge(w[1].text, from, to); });
    } else if (kw == "tile") {
      expect_arity(w, 3, std::string::npos);
      Complex& c = current(w[0]);
      check_id(w[1]);
      tile(c, line, w);
    } else if (kw == "carrier") {
      expect_arity(w, 4, 4);
      ensure_maps();
      expect_arrow(w[2]);
      const CellRef sub = lookup(rule_.refined, w[1], "refined cell");
      const CellRef base = lookup(rule_.base, w[3], "base cell");
      auto set = [&](std::vector<CellRef>& table) {
        if (table[sub.index].index >= 0) fail(w[1].column, "duplicate carrier for '" + w[1].text + "'");
        table[sub.index] = base;
      };
      set(sub.dim == Dim::Vertex ? rule_.vertex_carrier : sub.dim == Dim::Edge ? rule_.edge_carrier : rule_.tile_carrier);
      have_maps_ = true;
    } else if (kw == "map") {
      map(w);
    } else {
      fail(w[0].column, "unknown keyword '" + kw + "'");
    }
  }

  template <class F>
  void guarded(const Token& id, F&& f) {
    try {
      f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(id.column, e.what());
    }
  }

  void tile(Complex& c, const std::string& line, const std::vector<Token>& w) {
    // Rest of the line after the tile id, split on commas.
    std::size_t pos = static_cast<std::size_t>(w[1].column - 1) + w[1].text.size();
    std::vector<Side> word;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string raw = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto first = raw.find_first_not_of(" \t");
      const int column = static_cast<int>(pos + (first == std::string::npos ? 0 : first)) + 1;
      std::string item;
      for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) item += ch;
      if (item.size() < 2 || (item.back() != '+' && item.back() != '-'))
        fail(column, "expected an edge occurrence like 'e1+' but found '" + item + "'");
      const std::string id = item.substr(0, item.size() - 1);
      const int e = c.edge_index(id);
      if (e < 0) fail(column, "undeclared edge '" + id + "'");
      word.push_back({e, item.back() == '+'});
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    guarded(w[1], [&] { c.add_tile(w[1].text, std::move(word)); });
  }

  void map(const std::vector<Token>& w) {
    expect_arity(w, 5, 8);
    ensure_maps();
    expect_arrow(w[3]);
    const std::string& kind = w[1].text;
    have_maps_ = true;
    auto dim_of = [&](const Complex& c, const Token& t, Dim dim, const char* what) {
      const CellRef ref = lookup(c, t, what);
      if (ref.dim != dim) fail(t.column, "'" + t.text + "' is not a " + kind);
      return ref.index;
    };
    if (kind == "vertex") {
      expect_arity(w, 5, 5);
      const int sub = dim_of(rule_.refined, w[2], Dim::Vertex, "refined cell");
      if (rule_.vertex_map[sub] >= 0) fail(w[2].column, "duplicate map for '" + w[2].text + "'");
      rule_.vertex_map[sub] = dim_of(rule_.base, w[4], Dim::Vertex, "base cell");
    } else if (kind == "edge") {
      expect_arity(w, 5, 6);
      const int sub = dim_of(rule_.refined, w[2], Dim::Edge, "refined cell");
      if (rule_.edge_map[sub].edge >= 0) fail(w[2].column, "duplicate map for '" + w[2].text + "'");
      if (w.size() == 6 && w[5].text != "reversed") fail(w[5].column, "expected 'reversed'");
      rule_.edge_map[sub] = {dim_of(rule_.base, w[4], Dim::Edge, "base cell"), w.size() == 6};
    } else if (kind == "tile") {
      expect_arity(w, 7, 8);
      const int sub = dim_of(rule_.refined, w[2], Dim::Tile, "refined cell");
      if (rule_.tile_map[sub].tile >= 0) fail(w[2].column, "duplicate map for '" + w[2].text + "'");
      const int base = dim_of(rule_.base, w[4], Dim::Tile, "base cell");
      if (w[5].text != "offset") fail(w[5].column, "expected 'offset'");
      int offset = 0;
      try {
        std::size_t used = 0;
        offset = std::stoi(w[6].text, &used);
        if (used != w[6].text.size()) throw Error("");
      } catch (const std::exception&) {
        fail(w[6].column, "offset must be an integer");
      }
      if (w.size() == 8 && w[7].text != "reversed") fail(w[7].column, "expected 'reversed'");
      rule_.tile_map[sub] = {base, offset, w.size() == 8};
    } else {
      fail(w[1].column, "expected 'tile', 'edge' or 'vertex'");
    }
  }

  SubdivisionRule rule_;
  int line_ = 0;
  int section_ = 0;  // 0 none, 1 base, 2 refined
  bool named_ = false, have_base_ = false, have_refined_ = false, have_maps_ = false, maps_sized_ = false;
};

template <class Key>
std::vector<int> sorted_by(int n, Key key) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  return order;
}

void write_complex(std::ostream& os, const char* which, const Complex& c) {
  os << "complex " << which << "\n";
  for (int v : sorted_by(c.vertex_count(), [&](int i) { return c.vertex_id(i); }))
    os << "vertex " << c.vertex_id(v) << (c.is_marked(v) ? " marked" : "") << "\n";
  for (int e : sorted_by(c.edge_count(), [&](int i) { return c.edge(i).id; }))
    os << "edge " << c.edge(e).id << " " << c.vertex_id(c.edge(e).from) << " " << c.vertex_id(c.edge(e).to) << "\n";
  for (int t : sorted_by(c.tile_count(), [&](int i) { return c.tile(i).id; })) {
    os << "tile " << c.tile(t).id << " ";
    const auto& word = c.tile(t).word;
    for (std::size_t i = 0; i < word.size(); ++i)
      os << (i ? ", " : "") << c.edge(word[i].edge).id << (word[i].forward ? "+" : "-");
    os << "\n";
  }
}

}  // namespace

FsrDocument parse_fsr(std::string_view text) { return Parser().run(text); }

FsrDocument load_fsr(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fsr(ss.str());
}

std::string serialize(const SubdivisionRule& r) {
  if (r.name.empty()) throw Error("rule has no name");
  std::ostringstream os;
  os << "fsr " << r.name << "\n\n";
  write_complex(os, "base", r.base);
  os << "\n";
  write_complex(os, "refined", r.refined);
  os << "\n";
  const Complex& R = r.refined;
  const Complex& B = r.base;
  auto carrier = [&](const std::vector<CellRef>& table, int i, const std::string& id) {
    if (i < static_cast<int>(table.size()) && table[i].index >= 0)
      os << "carrier " << id << " -> " << B.cell_id(table[i]) << "\n";
  };
  for (int v : sorted_by(R.vertex_count(), [&](int i) { return R.vertex_id(i); })) carrier(r.vertex_carrier, v, R.vertex_id(v));
  for (int e : sorted_by(R.edge_count(), [&](int i) { return R.edge(i).id; })) carrier(r.edge_carrier, e, R.edge(e).id);
  for (int t : sorted_by(R.tile_count(), [&](int i) { return R.tile(i).id; })) carrier(r.tile_carrier, t, R.tile(t).id);
  os << "\n";
  for (int v : sorted_by(R.vertex_count(), [&](int i) { return R.vertex_id(i); }))
    if (v < static_cast<int>(r.vertex_map.size()) && r.vertex_map[v] >= 0)
      os << "map vertex " << R.vertex_id(v) << " -> " << B.vertex_id(r.vertex_map[v]) << "\n";
  for (int e : sorted_by(R.edge_count(), [&](int i) { return R.edge(i).id; }))
    if (e < static_cast<int>(r.edge_map.size()) && r.edge_map[e].edge >= 0)
      os << "map edge " << R.edge(e).id << " -> " << B.edge(r.edge_map[e].edge).id
         << (r.edge_map[e].reversed ? " reversed" : "") << "\n";
  for (int t : sorted_by(R.tile_count(), [&](int i) { return R.tile(i).id; }))
    if (t < static_cast<int>(r.tile_map.size()) && r.tile_map[t].tile >= 0)
      os << "map tile " << R.tile(t).id << " -> " << B.tile(r.tile_map[t].tile).id << " offset " << r.tile_map[t].offset
         << (r.tile_map[t].reversed ? " reversed" : "") << "\n";
  return os.str();
}

std::string serialize_complex(const std::string& name, const Complex& c) {
  if (name.empty()) throw Error("complex has no name");
  std::ostringstream os;
  os << "fsr " << name << "\n\n";
  write_complex(os, "base", c);
  return os.str();
}

std::string serialize(const FsrDocument& doc) {
  return doc.rule ? serialize(*doc.rule) : serialize_complex(doc.name, *doc.complex);
}

DiskComplex as_disk(const Complex& c) {
  auto boundary = derive_boundary(c);
  if (!boundary) throw Error("the one-sided edges do not form a single boundary cycle");
  return {c, std::move(*boundary)};
}

}  // namespace fsr
