#include "multicat/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "multicat/error.hpp"

namespace multicat {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

Color parse_color_key(const std::string& s, const std::string& path) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') schema_error(path, "color must look like [1,2], got " + s);
  std::vector<int> entries;
  std::stringstream in(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      schema_error(path, "bad color entry '" + item + "'");
    }
    if (used != item.size()) schema_error(path, "bad color entry '" + item + "'");
    entries.push_back(v);
  }
  try {
    return make_color(entries);
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
}

int parse_int_key(const std::string& s, const std::string& path) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    schema_error(path, "expected an integer key, got " + s);
  }
  if (used != s.size()) schema_error(path, "expected an integer key, got " + s);
  return v;
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing key '") + key + "'");
  return *it;
}

int need_int(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_number_integer()) schema_error(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string need_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

const json& need_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  return j;
}

const json& need_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

// ---- writing ----

json cells_json(const MultipleSet& ms) {
  json out = json::object();
  for (const auto& [c, ids] : ms.all_cells()) out[c.to_string()] = ids;
  return out;
}

json faces_json(const MultipleSet& ms) {
  json out = json::object();
  for (const auto& [key, table] : ms.face_tables()) {
    for (const auto& [x, f] : table) {
      json& slot = out[key.color.to_string()][x][std::to_string(key.direction)];
      if (slot.is_null()) slot = json::array({nullptr, nullptr});
      slot[key.polarity == Polarity::Source ? 0 : 1] = f;
    }
  }
  return out;
}

json refl_json(const ReflexionTable& refl) {
  json out = json::object();
  for (const auto& [key, table] : refl)
    for (const auto& [x, y] : table) out[key.first.to_string()][x][std::to_string(key.second)] = y;
  return out;
}

json comp_json(const CompositionTable& comp) {
  json out = json::object();
  for (const auto& [key, table] : comp) {
    json rows = json::array();
    for (const auto& [ab, y] : table) rows.push_back(json::array({ab.first, ab.second, y}));
    out[key.first.to_string()][std::to_string(key.second)] = rows;
  }
  return out;
}

json truncation_json(const Truncation& t) {
  json sizes = json::object();
  for (const auto& [key, n] : t.size) sizes[key.first.to_string()][key.second] = n;
  json open = json::object();
  for (const auto& [c, x] : t.open) open[c.to_string()].push_back(x);
  return json{{"size_bound", t.size_bound}, {"unary_cost", t.unary_cost}, {"sizes", sizes}, {"open", open}};
}

json reversors_json(const ReversorStructure& r) {
  json chains = json::array();
  for (const auto& [key, maps] : r.chains) {
    json ms = json::array();
    for (const auto& table : maps) ms.push_back(table);
    chains.push_back(json{{"color", key.first.to_string()}, {"entries", key.second}, {"maps", ms}});
  }
  return json{{"m", r.m}, {"kind", to_string(r.kind)}, {"chains", chains}};
}

json pairs_json(const std::map<std::pair<Color, int>, std::size_t>& m) {
  json out = json::object();
  for (const auto& [key, n] : m) out[key.first.to_string()][std::to_string(key.second)] = n;
  return out;
}

void put_magma(json& out, const MagmaStructure& m) {
  out["universe_bound"] = m.base.universe_bound();
  out["dim_bound"] = m.base.dim_bound();
  out["cells"] = cells_json(m.base);
  out["faces"] = faces_json(m.base);
  if (!m.refl.empty()) out["reflexions"] = refl_json(m.refl);
  if (!m.comp.empty()) out["compositions"] = comp_json(m.comp);
}

// ---- reading ----

MagmaStructure read_magma(const json& j, const std::string& path) {
  MagmaStructure m;
  m.base = MultipleSet(need_int(j, "universe_bound", path), need_int(j, "dim_bound", path));
  for (const auto& [ck, ids] : need_object(need(j, "cells", path), path + ".cells").items()) {
    const std::string p = path + ".cells." + ck;
    const Color c = parse_color_key(ck, p);
    for (const auto& id : need_array(ids, p)) m.base.add_cell(c, need_string(id, p));
  }
  for (const auto& [ck, cells] : need_object(need(j, "faces", path), path + ".faces").items()) {
    const std::string p = path + ".faces." + ck;
    const Color c = parse_color_key(ck, p);
    for (const auto& [x, dirs] : need_object(cells, p).items()) {
      for (const auto& [dk, st] : need_object(dirs, p + "." + x).items()) {
        const std::string q = p + "." + x + "." + dk;
        const int d = parse_int_key(dk, q);
        if (!st.is_array() || st.size() != 2) schema_error(q, "expected [source, target]");
        if (!st[0].is_null()) m.base.set_face(c, x, d, Polarity::Source, need_string(st[0], q));
        if (!st[1].is_null()) m.base.set_face(c, x, d, Polarity::Target, need_string(st[1], q));
      }
    }
  }
  if (auto it = j.find("reflexions"); it != j.end()) {
    for (const auto& [ck, cells] : need_object(*it, path + ".reflexions").items()) {
      const std::string p = path + ".reflexions." + ck;
      const Color c = parse_color_key(ck, p);
      for (const auto& [x, ls] : need_object(cells, p).items())
        for (const auto& [lk, y] : need_object(ls, p + "." + x).items())
          m.refl[{c, parse_int_key(lk, p + "." + x)}][x] = need_string(y, p + "." + x + "." + lk);
    }
  }
  if (auto it = j.find("compositions"); it != j.end()) {
    for (const auto& [ck, dirs] : need_object(*it, path + ".compositions").items()) {
      const std::string p = path + ".compositions." + ck;
      const Color c = parse_color_key(ck, p);
      for (const auto& [dk, rows] : need_object(dirs, p).items()) {
        const int d = parse_int_key(dk, p);
        for (const auto& row : need_array(rows, p + "." + dk)) {
          if (!row.is_array() || row.size() != 3) schema_error(p + "." + dk, "expected [a, b, composite]");
          m.comp[{c, d}][{need_string(row[0], p), need_string(row[1], p)}] = need_string(row[2], p);
        }
      }
    }
  }
  return m;
}

Truncation read_truncation(const json& j, const std::string& path) {
  Truncation t;
  t.size_bound = need_int(j, "size_bound", path);
  t.unary_cost = need_int(j, "unary_cost", path);
  for (const auto& [ck, cells] : need_object(need(j, "sizes", path), path + ".sizes").items()) {
    const Color c = parse_color_key(ck, path + ".sizes");
    for (const auto& [x, n] : need_object(cells, path + ".sizes." + ck).items()) {
      if (!n.is_number_integer()) schema_error(path + ".sizes." + ck + "." + x, "expected an integer");
      t.size[{c, x}] = n.get<int>();
    }
  }
  for (const auto& [ck, cells] : need_object(need(j, "open", path), path + ".open").items()) {
    const Color c = parse_color_key(ck, path + ".open");
    for (const auto& x : need_array(cells, path + ".open." + ck)) t.open.insert({c, need_string(x, path + ".open")});
  }
  return t;
}

CellTable read_table(const json& j, const std::string& path) {
  CellTable out;
  for (const auto& [x, y] : need_object(j, path).items()) out[x] = need_string(y, path + "." + x);
  return out;
}

ReversorStructure read_reversors(const json& j, const MultipleSet& base, const std::string& path) {
  ReversorStructure r;
  r.base = base;
  r.m = need_int(j, "m", path);
  auto kind = parse_reversor_kind(need_string(need(j, "kind", path), path + ".kind"));
  if (!kind) schema_error(path + ".kind", "expected minimal, maximal or general");
  r.kind = *kind;
  std::size_t i = 0;
  for (const auto& chain : need_array(need(j, "chains", path), path + ".chains")) {
    const std::string p = path + ".chains[" + std::to_string(i++) + "]";
    const Color c = parse_color_key(need_string(need(chain, "color", p), p + ".color"), p + ".color");
    std::vector<int> entries;
    for (const auto& e : need_array(need(chain, "entries", p), p + ".entries")) {
      if (!e.is_number_integer()) schema_error(p + ".entries", "expected integers");
      entries.push_back(e.get<int>());
    }
    std::vector<CellTable> maps;
    for (const auto& t : need_array(need(chain, "maps", p), p + ".maps")) maps.push_back(read_table(t, p + ".maps"));
    r.chains[{c, entries}] = std::move(maps);
  }
  return r;
}

std::map<std::pair<Color, int>, std::size_t> read_pairs(const json& j, const std::string& path) {
  std::map<std::pair<Color, int>, std::size_t> out;
  for (const auto& [ck, rs] : need_object(j, path).items()) {
    const Color c = parse_color_key(ck, path);
    for (const auto& [rk, n] : need_object(rs, path + "." + ck).items()) {
      if (!n.is_number_unsigned()) schema_error(path + "." + ck + "." + rk, "expected a count");
      out[{c, parse_int_key(rk, path)}] = n.get<std::size_t>();
    }
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + " column " + std::to_string(col);
}

}  // namespace

const char* to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::MultipleSet: return "multiple-set";
    case DocumentKind::Reflexive: return "reflexive";
    case DocumentKind::Magma: return "magma";
    case DocumentKind::Strict: return "strict";
    case DocumentKind::Reversors: return "reversors";
    case DocumentKind::Stretching: return "stretching";
  }
  return "multiple-set";
}

std::optional<DocumentKind> parse_document_kind(std::string_view s) {
  for (DocumentKind k : {DocumentKind::MultipleSet, DocumentKind::Reflexive, DocumentKind::Magma, DocumentKind::Strict,
                         DocumentKind::Reversors, DocumentKind::Stretching})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::string serialize(const Document& d) {
  json out;
  out["format_version"] = kFormatVersion;
  out["kind"] = to_string(d.kind);
  if (!d.meta.empty()) out["meta"] = d.meta;
  if (d.kind == DocumentKind::Stretching && d.stretching) {
    out["universe_bound"] = d.stretching->M.base.universe_bound();
    out["dim_bound"] = d.stretching->M.base.dim_bound();
    const Stretching& e = *d.stretching;
    json m, c;
    put_magma(m, e.M);
    put_magma(c, e.C);
    if (e.m_reversors) m["reversors"] = reversors_json(*e.m_reversors);
    if (e.m_truncation) m["truncation"] = truncation_json(*e.m_truncation);
    if (e.c_reversors) c["reversors"] = reversors_json(*e.c_reversors);
    if (e.c_truncation) c["truncation"] = truncation_json(*e.c_truncation);
    out["M"] = m;
    out["C"] = c;
    json pi = json::object();
    for (const auto& [col, table] : e.pi) pi[col.to_string()] = table;
    out["pi"] = pi;
    json br = json::object();
    for (const auto& [key, table] : e.brackets) {
      json rows = json::array();
      for (const auto& [ab, g] : table) rows.push_back(json::array({ab.first, ab.second, g}));
      br[key.first.to_string()][std::to_string(key.second)] = rows;
    }
    out["brackets"] = br;
  } else {
    put_magma(out, d.structure);
    if (d.truncation) out["truncation"] = truncation_json(*d.truncation);
    if (d.reversors) out["reversors"] = reversors_json(*d.reversors);
  }
  if (!d.stage_log.empty()) {
    json log = json::array();
    for (const auto& rec : d.stage_log) {
      json cells = json::object();
      for (const auto& [c, n] : rec.cells) cells[c.to_string()] = n;
      log.push_back(json{{"stage", rec.stage}, {"cells", cells}, {"pairs", pairs_json(rec.pairs)},
                         {"brackets", pairs_json(rec.brackets)}});
    }
    out["stage_log"] = log;
  }
  return out.dump(2) + "\n";
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw Error(ErrorCode::ParseError, line_column(text, e.byte) + ": " + what);
  }
  const std::string root = "$";
  Document d;
  const int version = need_int(j, "format_version", root);
  if (version != kFormatVersion) schema_error(root + ".format_version", "unsupported version " + std::to_string(version));
  auto kind = parse_document_kind(need_string(need(j, "kind", root), root + ".kind"));
  if (!kind) schema_error(root + ".kind", "unknown kind");
  d.kind = *kind;
  if (auto it = j.find("meta"); it != j.end())
    for (const auto& [k, v] : need_object(*it, root + ".meta").items()) d.meta[k] = need_string(v, root + ".meta." + k);

  if (d.kind == DocumentKind::Stretching) {
    Stretching e;
    const json& m = need(j, "M", root);
    const json& c = need(j, "C", root);
    e.M = read_magma(m, root + ".M");
    e.C = read_magma(c, root + ".C");
    if (auto it = m.find("reversors"); it != m.end()) e.m_reversors = read_reversors(*it, e.M.base, root + ".M.reversors");
    if (auto it = m.find("truncation"); it != m.end()) e.m_truncation = read_truncation(*it, root + ".M.truncation");
    if (auto it = c.find("reversors"); it != c.end()) e.c_reversors = read_reversors(*it, e.C.base, root + ".C.reversors");
    if (auto it = c.find("truncation"); it != c.end()) e.c_truncation = read_truncation(*it, root + ".C.truncation");
    for (const auto& [ck, table] : need_object(need(j, "pi", root), root + ".pi").items())
      e.pi[parse_color_key(ck, root + ".pi")] = read_table(table, root + ".pi." + ck);
    for (const auto& [ck, rs] : need_object(need(j, "brackets", root), root + ".brackets").items()) {
      const std::string p = root + ".brackets." + ck;
      const Color col = parse_color_key(ck, p);
      for (const auto& [rk, rows] : need_object(rs, p).items()) {
        const int r = parse_int_key(rk, p);
        for (const auto& row : need_array(rows, p + "." + rk)) {
          if (!row.is_array() || row.size() != 3) schema_error(p + "." + rk, "expected [alpha, beta, bracket]");
          e.brackets[{col, r}][{need_string(row[0], p), need_string(row[1], p)}] = need_string(row[2], p);
        }
      }
    }
    d.structure = e.M;
    d.stretching = std::move(e);
  } else {
    d.structure = read_magma(j, root);
    if (auto it = j.find("truncation"); it != j.end()) d.truncation = read_truncation(*it, root + ".truncation");
    if (auto it = j.find("reversors"); it != j.end()) d.reversors = read_reversors(*it, d.structure.base, root + ".reversors");
  }
  if (auto it = j.find("stage_log"); it != j.end()) {
    std::size_t i = 0;
    for (const auto& rec : need_array(*it, root + ".stage_log")) {
      const std::string p = root + ".stage_log[" + std::to_string(i++) + "]";
      StageRecord s;
      s.stage = need_int(rec, "stage", p);
      for (const auto& [ck, n] : need_object(need(rec, "cells", p), p + ".cells").items()) {
        if (!n.is_number_unsigned()) schema_error(p + ".cells." + ck, "expected a count");
        s.cells[parse_color_key(ck, p + ".cells")] = n.get<std::size_t>();
      }
      s.pairs = read_pairs(need(rec, "pairs", p), p + ".pairs");
      s.brackets = read_pairs(need(rec, "brackets", p), p + ".brackets");
      d.stage_log.push_back(std::move(s));
    }
  }
  return d;
}

Document read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_document(const std::filesystem::path& path, const Document& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << serialize(d);
}

ValidationReport validate_document(const Document& d, const DocumentCheck& options) {
  const DocumentKind kind = options.as.value_or(d.kind);
  const MagmaStructure& s = d.stretching ? d.stretching->M : d.structure;
  const Truncation* t = d.stretching ? (d.stretching->m_truncation ? &*d.stretching->m_truncation : nullptr)
                                     : (d.truncation ? &*d.truncation : nullptr);
  ValidationReport r;
  switch (kind) {
    case DocumentKind::MultipleSet: r = validate_multiple_set(s.base); break;
    case DocumentKind::Reflexive:
      r = validate_multiple_set(s.base);
      r.merge(validate_reflexive(s.reflexive_part(), {}, t));
      break;
    case DocumentKind::Magma:
      r = validate_multiple_set(s.base);
      r.merge(validate_magma(s, t));
      if (!s.refl.empty()) {
        r.merge(validate_reflexive(s.reflexive_part(), {}, t));
        r.merge(validate_reflexive_magma(s, t));
      }
      break;
    case DocumentKind::Strict: r = validate_strict_all(s, t); break;
    case DocumentKind::Reversors: {
      r = validate_strict_all(s, t);
      if (!d.reversors) {
        r.add("REV-SHAPE", Color{}, {}, "document carries no reversor tables");
        break;
      }
      ReversorStructure rev = *d.reversors;
      if (options.m) rev.m = *options.m;
      if (options.reversor_kind) rev.kind = *options.reversor_kind;
      r.merge(validate_reversors(rev, t));
      break;
    }
    case DocumentKind::Stretching: {
      if (!d.stretching) {
        r.add("PI-TOTAL", Color{}, {}, "document carries no stretching");
        break;
      }
      const Stretching& e = *d.stretching;
      const Truncation* ct = e.c_truncation ? &*e.c_truncation : nullptr;
      r = validate_multiple_set(e.M.base);
      r.merge(validate_reflexive(e.M.reflexive_part(), {}, t));
      r.merge(validate_magma(e.M, t));
      r.merge(validate_reflexive_magma(e.M, t));
      r.merge(validate_strict_all(e.C, ct));
      if (e.m_reversors) r.merge(validate_reversors(*e.m_reversors, t));
      if (e.c_reversors) r.merge(validate_reversors(*e.c_reversors, ct));
      r.merge(validate_stretching(e));
      break;
    }
  }
  return r.canonicalize();
}

Document multiple_set_document(const MultipleSet& ms) {
  Document d;
  d.kind = DocumentKind::MultipleSet;
  d.structure.base = ms;
  return d;
}

Document strict_document(const StrictCategory& c, std::optional<Truncation> truncation) {
  Document d;
  d.kind = DocumentKind::Strict;
  d.structure = c;
  d.truncation = std::move(truncation);
  return d;
}

Document weak_document(const FreeWeakResult& w) {
  Document d;
  d.kind = DocumentKind::Stretching;
  d.structure = w.stretching.M;
  d.stretching = w.stretching;
  d.stage_log = w.log;
  return d;
}

}  // namespace multicat
