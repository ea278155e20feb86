// multicat: validate, build and inspect multiple-category documents.
//
// Exit codes: 0 valid, 1 axiom violations or bound failures, 2 I/O, parse
// or usage errors.

#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "multicat/document.hpp"
#include "multicat/error.hpp"
#include "multicat/fixtures.hpp"

using namespace multicat;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

struct Options {
  std::string path, other, format = "text", out;
  std::string as, reversor_kind, mode, example;
  std::optional<int> m, dim, size;
  int stages = 1;
  std::uint64_t seed = 0;
  int universe = 2, gens = 1, merges = 1, objects = 2, cols = 2, rows = 2;
};

json report_json(const ValidationReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations())
    vs.push_back(json{{"axiom", v.axiom}, {"color", v.color.to_string()}, {"cells", v.cells}, {"detail", v.detail}});
  return json{{"ok", r.ok()}, {"violations", vs}};
}

int cmd_validate(const Options& o) {
  Document d = read_document(o.path);
  DocumentCheck check;
  if (!o.as.empty()) {
    check.as = parse_document_kind(o.as);
    if (!check.as) throw Error(ErrorCode::ParseError, "unknown kind " + o.as);
  }
  check.m = o.m;
  if (!o.reversor_kind.empty()) {
    check.reversor_kind = parse_reversor_kind(o.reversor_kind);
    if (!check.reversor_kind) throw Error(ErrorCode::ParseError, "unknown reversor kind " + o.reversor_kind);
  }
  ValidationReport r = validate_document(d, check);
  if (o.format == "json") std::cout << report_json(r).dump(2) << "\n";
  else if (r.ok()) std::cout << "ok\n";
  else std::cout << r.render();
  return r.ok() ? kOk : kInvalid;
}

void count_table(std::ostream& out, const std::string& title, const MultipleSet& ms) {
  out << title << "\n";
  std::size_t total = 0;
  for (const auto& c : all_colors(ms.universe_bound(), ms.dim_bound())) {
    auto it = ms.all_cells().find(c);
    const std::size_t n = it == ms.all_cells().end() ? 0 : it->second.size();
    total += n;
    out << "  " << c.to_string() << " " << n << "\n";
  }
  out << "  total " << total << "\n";
}

json counts_json(const MultipleSet& ms) {
  json out = json::object();
  for (const auto& c : all_colors(ms.universe_bound(), ms.dim_bound())) {
    auto it = ms.all_cells().find(c);
    out[c.to_string()] = it == ms.all_cells().end() ? 0 : it->second.size();
  }
  return out;
}

void stage_log_text(std::ostream& out, const std::vector<StageRecord>& log) {
  if (log.empty()) return;
  out << "stage log\n";
  for (const auto& rec : log) {
    out << "  stage " << rec.stage << " cells";
    for (const auto& [c, n] : rec.cells) out << " " << c.to_string() << "=" << n;
    out << " brackets";
    for (const auto& [k, n] : rec.brackets) out << " " << k.first.to_string() << "r" << k.second << "=" << n;
    out << " pairs";
    for (const auto& [k, n] : rec.pairs) out << " " << k.first.to_string() << "r" << k.second << "=" << n;
    out << "\n";
  }
}

void bracket_text(std::ostream& out, const BracketTable& b) {
  out << "brackets\n";
  std::size_t total = 0;
  for (const auto& [key, table] : b) {
    out << "  " << key.first.to_string() << " r=" << key.second << " " << table.size() << "\n";
    total += table.size();
  }
  out << "  total " << total << "\n";
}

int cmd_free(const Options& o) {
  Document in = read_document(o.path);
  const MultipleSet& x = in.stretching ? in.stretching->M.base : in.structure.base;
  const int dim = o.dim.value_or(x.dim_bound());
  const int size = o.size.value_or(6);
  Document out;
  out.meta["mode"] = o.mode;
  out.meta["dim_bound"] = std::to_string(dim);
  std::ostringstream table;
  if (o.mode == "reflexive") {
    FreeReflexive r = free_reflexive(x, dim);
    out.kind = DocumentKind::Reflexive;
    out.structure.base = r.structure.base;
    out.structure.refl = r.structure.refl;
    count_table(table, "cells", out.structure.base);
  } else if (o.mode == "strict") {
    StrictPresentation p = free_strict(x, dim, size, o.m);
    TabulatedCategory q = truncated_category(p);
    bool complete = true;
    try {
      quotient_to_category(p);
    } catch (const Error&) {
      complete = false;
    }
    out = strict_document(q.category, q.truncation);
    out.meta["mode"] = o.mode;
    out.meta["dim_bound"] = std::to_string(dim);
    out.meta["size_bound"] = std::to_string(size);
    if (o.m) {
      out.kind = DocumentKind::Reversors;
      out.reversors = presentation_reversors(p, q);
      out.meta["m"] = std::to_string(*o.m);
    }
    count_table(table, "classes", q.category.base);
    table << "complete " << (complete ? "yes" : "no") << "\n";
  } else if (o.mode == "weak") {
    FreeWeakResult w = free_weak(x, o.m, dim, size, o.stages);
    std::map<std::string, std::string> meta = {{"mode", o.mode},
                                               {"dim_bound", std::to_string(dim)},
                                               {"size_bound", std::to_string(size)},
                                               {"stages", std::to_string(o.stages)}};
    if (o.m) meta["m"] = std::to_string(*o.m);
    out = weak_document(w);
    out.meta = meta;
    count_table(table, "M cells", w.stretching.M.base);
    count_table(table, "C classes", w.stretching.C.base);
    bracket_text(table, w.stretching.brackets);
    stage_log_text(table, w.log);
  } else {
    throw Error(ErrorCode::ParseError, "unknown mode " + o.mode);
  }
  if (!o.out.empty()) write_document(o.out, out);
  std::cout << table.str();
  return kOk;
}

std::size_t composable_pairs(const MultipleSet& ms, const Color& c, int d) {
  std::map<CellId, std::size_t> targets;
  for (const auto& x : ms.cells(c))
    if (auto t = ms.find_face(c, x, d, Polarity::Target)) ++targets[*t];
  std::size_t n = 0;
  for (const auto& x : ms.cells(c))
    if (auto s = ms.find_face(c, x, d, Polarity::Source))
      if (auto it = targets.find(*s); it != targets.end()) n += it->second;
  return n;
}

int cmd_stats(const Options& o) {
  Document d = read_document(o.path);
  const MagmaStructure& s = d.stretching ? d.stretching->M : d.structure;
  const MultipleSet& ms = s.base;
  json j;
  j["kind"] = to_string(d.kind);
  j["universe_bound"] = ms.universe_bound();
  j["dim_bound"] = ms.dim_bound();
  j["cells"] = counts_json(ms);
  json pairs = json::object(), comps = json::object(), refls = json::object();
  for (const auto& c : all_colors(ms.universe_bound(), ms.dim_bound())) {
    for (int dir : c.entries()) {
      const std::string key = c.to_string() + " d=" + std::to_string(dir);
      pairs[key] = composable_pairs(ms, c, dir);
      auto it = s.comp.find({c, dir});
      comps[key] = it == s.comp.end() ? 0 : it->second.size();
    }
  }
  for (const auto& [key, table] : s.refl) refls[key.first.to_string() + " l=" + std::to_string(key.second)] = table.size();
  j["composable_pairs"] = pairs;
  j["composites"] = comps;
  j["reflexions"] = refls;
  if (d.stretching) {
    j["C_cells"] = counts_json(d.stretching->C.base);
    json br = json::object();
    for (const auto& [key, table] : d.stretching->brackets)
      br[key.first.to_string() + " r=" + std::to_string(key.second)] = table.size();
    j["brackets"] = br;
  }
  if (!d.stage_log.empty()) j["stage_log"] = json::parse(serialize(d))["stage_log"];
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "kind " << to_string(d.kind) << "\n";
  std::cout << "bounds universe=" << ms.universe_bound() << " dim=" << ms.dim_bound() << "\n";
  count_table(std::cout, "cells", ms);
  auto section = [](const char* title, const json& obj) {
    std::cout << title << "\n";
    for (const auto& [k, v] : obj.items()) std::cout << "  " << k << " " << v.get<std::size_t>() << "\n";
  };
  section("composable pairs", pairs);
  section("composites", comps);
  section("reflexions", refls);
  if (d.stretching) {
    count_table(std::cout, "C cells", d.stretching->C.base);
    bracket_text(std::cout, d.stretching->brackets);
  }
  stage_log_text(std::cout, d.stage_log);
  return kOk;
}

void flatten_magma(std::map<std::string, std::string>& out, const std::string& prefix, const MagmaStructure& m) {
  out[prefix + "bounds"] = std::to_string(m.base.universe_bound()) + " " + std::to_string(m.base.dim_bound());
  for (const auto& [c, ids] : m.base.all_cells())
    for (const auto& x : ids) out[prefix + "cell " + c.to_string() + " " + x] = "";
  for (const auto& [key, table] : m.base.face_tables())
    for (const auto& [x, f] : table)
      out[prefix + "face " + key.color.to_string() + " " + x + " d=" + std::to_string(key.direction) + " " +
          to_string(key.polarity)] = f;
  for (const auto& [key, table] : m.refl)
    for (const auto& [x, y] : table) out[prefix + "reflexion " + key.first.to_string() + " " + x + " l=" + std::to_string(key.second)] = y;
  for (const auto& [key, table] : m.comp)
    for (const auto& [ab, y] : table)
      out[prefix + "composite " + key.first.to_string() + " d=" + std::to_string(key.second) + " " + ab.first + " " + ab.second] = y;
}

std::map<std::string, std::string> flatten(const Document& d) {
  std::map<std::string, std::string> out;
  out["kind"] = to_string(d.kind);
  if (d.stretching) {
    flatten_magma(out, "M ", d.stretching->M);
    flatten_magma(out, "C ", d.stretching->C);
    for (const auto& [c, table] : d.stretching->pi)
      for (const auto& [x, y] : table) out["pi " + c.to_string() + " " + x] = y;
    for (const auto& [key, table] : d.stretching->brackets)
      for (const auto& [ab, g] : table)
        out["bracket " + key.first.to_string() + " r=" + std::to_string(key.second) + " " + ab.first + " " + ab.second] = g;
  } else {
    flatten_magma(out, "", d.structure);
  }
  if (d.reversors)
    for (const auto& [key, maps] : d.reversors->chains)
      for (std::size_t p = 0; p < maps.size(); ++p)
        for (const auto& [x, y] : maps[p]) {
          std::string entries;
          for (int e : key.second) entries += (entries.empty() ? "" : ",") + std::to_string(e);
          out["reversor " + key.first.to_string() + " chain=" + entries + " map=" + std::to_string(p) + " " + x] = y;
        }
  return out;
}

int cmd_diff(const Options& o) {
  const auto a = flatten(read_document(o.path));
  const auto b = flatten(read_document(o.other));
  std::vector<std::string> lines;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end()) lines.push_back("- " + k + (v.empty() ? "" : " = " + v));
    else if (it->second != v) lines.push_back("~ " + k + ": " + v + " -> " + it->second);
  }
  for (const auto& [k, v] : b)
    if (!a.count(k)) lines.push_back("+ " + k + (v.empty() ? "" : " = " + v));
  std::sort(lines.begin(), lines.end(), [](const std::string& x, const std::string& y) {
    return x.substr(2) != y.substr(2) ? x.substr(2) < y.substr(2) : x < y;
  });
  if (o.format == "json") {
    std::cout << json{{"identical", lines.empty()}, {"changes", lines}}.dump(2) << "\n";
  } else if (lines.empty()) {
    std::cout << "identical\n";
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
  }
  return lines.empty() ? kOk : kInvalid;
}

int cmd_canon(const Options& o) {
  std::cout << serialize(read_document(o.path));
  return kOk;
}

void emit(const Options& o, const Document& d) {
  if (o.out.empty()) std::cout << serialize(d);
  else write_document(o.out, d);
}

int cmd_example(const Options& o) {
  const std::string& n = o.example;
  Document d;
  if (n == "square") d = multiple_set_document(fixtures::square());
  else if (n == "square-broken-st") d = multiple_set_document(fixtures::square_broken_st());
  else if (n == "point") d = multiple_set_document(fixtures::point());
  else if (n == "path2") d = multiple_set_document(fixtures::path2());
  else if (n == "parallel-edges") d = multiple_set_document(fixtures::parallel_edges());
  else if (n == "terminal") d = multiple_set_document(fixtures::terminal(o.universe, o.dim.value_or(o.universe)));
  else if (n == "grid") d = multiple_set_document(fixtures::grid(o.cols, o.rows));
  else if (n == "empty") d = multiple_set_document(MultipleSet(o.universe, o.dim.value_or(o.universe)));
  else if (n == "codiscrete") d = strict_document(fixtures::codiscrete(o.objects, o.universe, o.dim.value_or(o.universe)));
  else if (n == "z2-loop") d = strict_document(fixtures::z2_loop());
  else if (n == "arrow") d = strict_document(fixtures::arrow());
  else throw Error(ErrorCode::ParseError, "unknown example " + n);
  d.meta["example"] = n;
  emit(o, d);
  return kOk;
}

int cmd_random(const Options& o) {
  const int dim = o.dim.value_or(o.universe);
  Document d = multiple_set_document(random_multiple_set(o.universe, dim, SizeProfile{o.gens, o.merges}, o.seed));
  d.meta["generator"] = "random";
  d.meta["seed"] = std::to_string(o.seed);
  d.meta["profile"] = "gens=" + std::to_string(o.gens) + " merges=" + std::to_string(o.merges);
  if (!o.out.empty()) std::cout << "seed " << o.seed << "\n";
  emit(o, d);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Validate, build and inspect multiple-category documents"};
  app.require_subcommand(1);
  Options o;
  const std::set<std::string> formats{"text", "json"};

  auto* validate = app.add_subcommand("validate", "Check every axiom the document's kind promises");
  validate->add_option("path", o.path, "Document")->required();
  validate->add_option("--as", o.as, "Validate as another kind");
  validate->add_option("--m", o.m, "Override the reversor floor m");
  validate->add_option("--reversor-kind", o.reversor_kind, "minimal, maximal or general");
  validate->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* free = app.add_subcommand("free", "Build a free structure on the document's cells");
  free->add_option("path", o.path, "Generating document")->required();
  free->add_option("--mode", o.mode, "reflexive, strict or weak")->required()->check(CLI::IsMember({"reflexive", "strict", "weak"}));
  free->add_option("--dim", o.dim, "Dimension bound N");
  free->add_option("--size", o.size, "Term size bound S (default 6)");
  free->add_option("--stages", o.stages, "Completion stages (weak mode)");
  free->add_option("--m", o.m, "Adjoin formal reversors above dimension m");
  free->add_option("--out", o.out, "Write the result here");

  auto* stats = app.add_subcommand("stats", "Cell, composite and bracket counts");
  stats->add_option("path", o.path, "Document")->required();
  stats->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* diff = app.add_subcommand("diff", "Structural difference of two documents");
  diff->add_option("a", o.path)->required();
  diff->add_option("b", o.other)->required();
  diff->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* canon = app.add_subcommand("canon", "Print the canonical form of a document");
  canon->add_option("path", o.path, "Document")->required();

  auto* example = app.add_subcommand("example", "Print a built-in fixture");
  example->add_option("name", o.example,
                      "square, square-broken-st, point, path2, parallel-edges, terminal, grid, empty, codiscrete, z2-loop, arrow")
      ->required();
  example->add_option("--universe", o.universe, "Universe bound D");
  example->add_option("--dim", o.dim, "Dimension bound N");
  example->add_option("--objects", o.objects, "Objects (codiscrete)");
  example->add_option("--cols", o.cols, "Columns (grid)");
  example->add_option("--rows", o.rows, "Rows (grid)");
  example->add_option("--out", o.out, "Write here instead of stdout");

  auto* random = app.add_subcommand("random", "Random valid multiple set");
  random->add_option("--seed", o.seed, "Seed (echoed into the document)")->required();
  random->add_option("--universe", o.universe, "Universe bound D");
  random->add_option("--dim", o.dim, "Dimension bound N");
  random->add_option("--gens", o.gens, "Generators per color");
  random->add_option("--merges", o.merges, "Merges per color");
  random->add_option("--out", o.out, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kIoError;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*free) return cmd_free(o);
    if (*stats) return cmd_stats(o);
    if (*diff) return cmd_diff(o);
    if (*canon) return cmd_canon(o);
    if (*example) return cmd_example(o);
    if (*random) return cmd_random(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? kIoError : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kIoError;
}
