#include "theoryforge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "theoryforge/checker.hpp"
#include "theoryforge/combinators.hpp"
#include "theoryforge/engine.hpp"
#include "theoryforge/parser.hpp"
#include "theoryforge/pipeline.hpp"
#include "theoryforge/printer.hpp"

namespace fs = std::filesystem;

namespace theoryforge {

namespace {

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

bool read_file(const fs::path& p, std::string& text, std::ostream& err) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    err << p.string() << ": cannot read file\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

void report_parse_error(const ParseError& e, const fs::path& file,
                        std::ostream& err) {
  err << file.string() << ":" << e.what() << "\n";
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

bool report_check_errors(const std::vector<CheckError>& errors,
                         std::string_view file, std::ostream& err) {
  for (const auto& e : errors) err << format_error(e, file) << "\n";
  return errors.empty();
}

void remove_stale_outputs(const fs::path& dir) {
  if (!fs::exists(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 8 &&
        name.compare(name.size() - 8, 8, ".gen.eqt") == 0)
      fs::remove(entry.path());
  }
}

// Writes each module under <outDir>/<Theory>/, replacing stale outputs. A
// theory with nothing generated gets no files. Returns the total number of
// lines in the module texts.
std::size_t write_modules(const std::vector<TheoryModule>& mods,
                          const fs::path& outDir) {
  std::size_t lines = 0;
  for (const auto& m : mods) {
    const std::string text = print_module(m.decls());
    lines += count_lines(text);
    fs::path dir = outDir / m.theory;
    remove_stale_outputs(dir);
    if (m.generated.empty()) continue;
    fs::create_directories(dir);
    for (const auto& d : m.generated) {
      std::ofstream f(dir / (decl_name(d) + ".gen.eqt"), std::ios::binary);
      f << print_decl(d);
    }
    std::ofstream f(dir / "module.gen.eqt", std::ios::binary);
    f << text;
  }
  return lines;
}

// Generation, module check and output shared by `gen` and `lib`.
int generate_and_write(const std::vector<TheorySource>& srcs,
                       const RunConfig& cfg, std::ostream& out,
                       std::ostream& err, bool summary) {
  std::vector<TheoryModule> mods;
  try {
    mods = generate_modules(srcs, cfg.kinds, cfg.gen_options(), cfg.parallelism);
  } catch (const GenerationError& e) {
    err << "generation failed: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const ShapeError& e) {
    err << "generation failed: " << e.theory << ": " << e.what() << "\n";
    return kExitGeneration;
  }

  auto errors = check_modules(mods, cfg.parallelism);
  bool clean = true;
  for (std::size_t i = 0; i < mods.size(); ++i)
    clean &= report_check_errors(
        errors[i], (cfg.outDir / mods[i].theory / "module.gen.eqt").string(), err);
  if (!clean) return kExitCheck;

  std::size_t lines = 0;
  try {
    lines = write_modules(mods, cfg.outDir);
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitParse;
  }

  std::size_t defs = 0;
  for (const auto& m : mods) defs += m.definitions();
  if (summary)
    out << "theories=" << mods.size() << " definitions=" << defs
        << " lines=" << lines << "\n";
  else
    out << "wrote " << mods.size() << " module(s) to " << cfg.outDir.string()
        << "\n";
  return kExitOk;
}

}  // namespace

void RunConfig::validate() const {
  if (parallelism < 1) throw ConfigError("jobs must be at least 1");
  GenOptions g = gen_options();
  std::set<std::string> seen;
  for (auto k : {GenKind::Signature, GenKind::Product, GenKind::TermLang,
                 GenKind::OpenTermLang}) {
    const std::string& s = *g.suffixes.find(k);
    if (s.empty() || !is_valid_name("x" + s))
      throw ConfigError("invalid suffix '" + s + "' for " +
                        std::string(cli_name(k)));
    if (!seen.insert(s).second)
      throw ConfigError("suffix '" + s + "' is used by two constructions");
  }
}

GenOptions RunConfig::gen_options() const {
  GenOptions g;
  for (const auto& [k, s] : suffixes)
    if (std::string* slot = g.suffixes.find(k)) *slot = s;
  return g;
}

std::vector<GenKind> parse_kind_list(std::string_view csv) {
  std::vector<GenKind> kinds;
  csv = trim(csv);
  while (!csv.empty()) {
    auto comma = csv.find(',');
    std::string_view item = trim(csv.substr(0, comma));
    auto k = parse_gen_kind(item);
    if (!k) throw ConfigError("unknown construction '" + std::string(item) + "'");
    if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end())
      kinds.push_back(*k);
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  return kinds;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "constructions") {
    cfg.kinds = parse_kind_list(value);
  } else if (key == "out") {
    cfg.outDir = std::string(value);
  } else if (key == "jobs") {
    int n = 0;
    std::istringstream in{std::string(value)};
    if (!(in >> n) || !in.eof() || n < 1)
      throw ConfigError("jobs must be a positive integer, got '" +
                        std::string(value) + "'");
    cfg.parallelism = n;
  } else if (key == "orient-assoc") {
    if (value == "true" || value == "1" || value == "yes")
      cfg.forceOrientAssoc = true;
    else if (value == "false" || value == "0" || value == "no")
      cfg.forceOrientAssoc = false;
    else
      throw ConfigError("orient-assoc must be true or false");
  } else if (key == "suffix") {
    auto eq = value.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("suffix must be KIND=STR");
    auto k = parse_gen_kind(trim(value.substr(0, eq)));
    if (!k || !GenOptions{}.suffixes.find(*k))
      throw ConfigError("no suffix for '" +
                        std::string(trim(value.substr(0, eq))) + "'");
    cfg.suffixes[*k] = std::string(trim(value.substr(eq + 1)));
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

void load_config(RunConfig& cfg, const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot read config");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    for (std::string_view c : {"#", "--"})
      if (auto p = l.find(c); p != std::string_view::npos) l = l.substr(0, p);
    l = trim(l);
    if (l.empty()) continue;
    auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(file.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    try {
      apply_setting(cfg, l.substr(0, eq), l.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
}

int cmd_check(const std::vector<fs::path>& files, std::ostream& out,
              std::ostream& err) {
  int rc = kExitOk;
  for (const auto& file : files) {
    std::string text;
    if (!read_file(file, text, err)) return kExitParse;
    std::vector<Decl> decls;
    try {
      decls = parse_file(text);
    } catch (const ParseError& e) {
      report_parse_error(e, file, err);
      return kExitParse;
    }
    auto errors = check_module(decls);
    for (const auto& e : errors) out << format_error(e, file.string()) << "\n";
    if (errors.empty())
      out << file.string() << ": ok (" << decls.size() << " declarations)\n";
    else
      rc = kExitCheck;
  }
  return rc;
}

int cmd_gen(const fs::path& file, const RunConfig& cfg, std::ostream& out,
            std::ostream& err) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }
  std::string text;
  if (!read_file(file, text, err)) return kExitParse;
  std::vector<Decl> decls;
  try {
    decls = parse_file(text);
  } catch (const ParseError& e) {
    report_parse_error(e, file, err);
    return kExitParse;
  }
  if (!report_check_errors(check_module(decls), file.string(), err))
    return kExitCheck;

  std::vector<TheorySource> srcs;
  for (const auto& d : decls) {
    const auto* r = std::get_if<RecordDecl>(&d);
    if (!r) continue;
    try {
      srcs.push_back({extract(*r), d});
    } catch (const ShapeError& e) {
      err << file.string() << ":" << e.pos.line << ":" << e.pos.column
          << ": generation failed: " << r->name << ": " << e.what() << "\n";
      return kExitGeneration;
    }
  }
  return generate_and_write(srcs, cfg, out, err, false);
}

int cmd_lib(const fs::path& libfile, const RunConfig& cfg, std::ostream& out,
            std::ostream& err) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }
  std::string text;
  if (!read_file(libfile, text, err)) return kExitParse;
  std::vector<TheoryExpr> entries;
  try {
    entries = parse_library(text);
  } catch (const ParseError& e) {
    report_parse_error(e, libfile, err);
    return kExitParse;
  }
  Library lib;
  try {
    lib = expand_library(std::move(entries), cfg.parallelism);
  } catch (const ExpandError& e) {
    err << libfile.string() << ": expansion failed: " << e.what() << "\n";
    return kExitGeneration;
  }
  std::vector<TheorySource> srcs;
  for (const auto& t : lib.theories()) srcs.push_back({t, embed(t)});
  return generate_and_write(srcs, cfg, out, err, true);
}

int cmd_normalize(const fs::path& file, std::string_view term,
                  const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  if (!read_file(file, text, err)) return kExitParse;
  EqTheory theory;
  try {
    auto decls = parse_file(text);
    auto it = std::find_if(decls.begin(), decls.end(), [](const Decl& d) {
      return std::holds_alternative<RecordDecl>(d);
    });
    if (it == decls.end()) {
      err << file.string() << ": no theory to normalize under\n";
      return kExitParse;
    }
    theory = extract(std::get<RecordDecl>(*it));
  } catch (const ParseError& e) {
    report_parse_error(e, file, err);
    return kExitParse;
  } catch (const ShapeError& e) {
    err << file.string() << ": " << e.what() << "\n";
    return kExitGeneration;
  }

  std::map<std::string, std::size_t> arities;
  for (const auto& [f, n] : signature_of(theory)) arities[f] = n;

  // Every name that is not a function symbol is a variable.
  std::vector<std::string> vars;
  Term t;
  try {
    for (const auto& tok : tokenize(term))
      if (tok.kind == Token::Kind::Name && !arities.count(tok.text) &&
          std::find(vars.begin(), vars.end(), tok.text) == vars.end())
        vars.push_back(tok.text);
    Parser p(term);
    t = p.parse_term(vars);
    if (!p.at(Token::Kind::End)) p.fail({"end of term"});
  } catch (const ParseError& e) {
    err << "<term>:" << e.what() << "\n";
    return kExitParse;
  }

  OpenTerm ot;
  try {
    ot = to_open_term(t, vars);
  } catch (const ArityError& e) {
    err << "<term>: ArityMismatch: " << e.what() << "\n";
    return kExitCheck;
  }
  std::vector<const OpenTerm*> stack{&ot};
  while (!stack.empty()) {
    const OpenTerm* x = stack.back();
    stack.pop_back();
    if (x->is_var()) continue;
    if (arities.at(x->sym) != x->args.size()) {
      err << "<term>: ArityMismatch: '" << x->sym << "' expects "
          << arities.at(x->sym) << " arguments, got " << x->args.size() << "\n";
      return kExitCheck;
    }
    for (const auto& a : x->args) stack.push_back(&a);
  }

  auto rules = orient_all(theory, OrientOptions{cfg.forceOrientAssoc});
  std::size_t steps = 0;
  OpenTerm nf = normalize(ot, rules, sufficient_fuel(ot, rules), &steps);
  out << print_term(to_surface_term(nf, vars)) << "\n";
  return kExitOk;
}

}  // namespace theoryforge
