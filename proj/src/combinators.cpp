#include "theoryforge/combinators.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "theoryforge/parser.hpp"

namespace theoryforge {

std::vector<std::string> TheoryExpr::parents() const {
  switch (kind) {
    case Kind::Base: return {};
    case Kind::Extend:
    case Kind::Rename: return {parent};
    case Kind::Combine: return {left, right, over};
  }
  return {};
}

std::string_view to_string(ExpandError::Kind k) {
  switch (k) {
    case ExpandError::Kind::Clash: return "ClashError";
    case ExpandError::Kind::Shape: return "ShapeError";
    case ExpandError::Kind::UnknownTheory: return "UnknownTheory";
    case ExpandError::Kind::DuplicateTheory: return "DuplicateTheory";
    case ExpandError::Kind::BadRename: return "BadRename";
  }
  return "ExpandError";
}

ExpandError::ExpandError(Kind kind, std::string entry, std::string detail)
    : std::runtime_error(entry + ": " + std::string(to_string(kind)) + ": " +
                         detail),
      kind(kind),
      entry(std::move(entry)) {}

const EqTheory& Library::at(const std::string& name) const {
  auto it = expanded.find(name);
  if (it == expanded.end())
    throw ExpandError(ExpandError::Kind::UnknownTheory, name,
                      "theory has not been expanded");
  return it->second;
}

std::vector<EqTheory> Library::theories() const {
  std::vector<EqTheory> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(at(e.name));
  return out;
}

std::vector<TheoryExpr> parse_library(std::string_view source) {
  Parser p(source);
  std::vector<TheoryExpr> out;
  while (!p.at(Token::Kind::End)) {
    TheoryExpr e;
    e.pos = p.peek().pos;
    p.expect_word("theory");
    e.name = p.expect_name();
    p.expect(Token::Kind::Equals, "'='");
    if (p.at_word("base")) {
      p.expect_word("base");
      e.kind = TheoryExpr::Kind::Base;
      p.expect(Token::Kind::LBrace, "'{'");
      e.decl.name = e.name;
      e.decl.constructorName = e.name + "C";
      e.decl.pos = e.pos;
      while (p.at_binder()) e.decl.params.push_back(p.parse_binder());
      e.decl.fields = p.parse_constrs();
      p.expect(Token::Kind::RBrace, "'}'");
    } else if (p.at_word("extend")) {
      p.expect_word("extend");
      e.kind = TheoryExpr::Kind::Extend;
      e.parent = p.expect_name();
      p.expect_word("with");
      p.expect(Token::Kind::LBrace, "'{'");
      e.newDecls = p.parse_constrs();
      p.expect(Token::Kind::RBrace, "'}'");
    } else if (p.at_word("rename")) {
      p.expect_word("rename");
      e.kind = TheoryExpr::Kind::Rename;
      e.parent = p.expect_name();
      p.expect_word("renaming");
      p.expect(Token::Kind::LParen, "'('");
      while (!p.at(Token::Kind::RParen)) {
        if (!e.mapping.empty()) p.expect(Token::Kind::Comma, "','");
        std::string from = p.expect_name();
        p.expect_word("to");
        e.mapping.emplace_back(std::move(from), p.expect_name());
      }
      p.expect(Token::Kind::RParen, "')'");
    } else if (p.at_word("combine")) {
      p.expect_word("combine");
      e.kind = TheoryExpr::Kind::Combine;
      e.left = p.expect_name();
      e.right = p.expect_name();
      p.expect_word("over");
      e.over = p.expect_name();
    } else {
      p.fail({"'base'", "'extend'", "'rename'", "'combine'"});
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

struct Expansion {
  EqTheory theory;
  std::map<std::string, std::string> rightRenaming;
};

EqTheory retitle(EqTheory t, const std::string& name) {
  t.name = name;
  t.constructorName = name + "C";
  return t;
}

std::optional<const TheoryExpr*> find_entry(const Library& lib,
                                            const std::string& name) {
  for (const auto& e : lib.entries)
    if (e.name == name) return &e;
  return std::nullopt;
}

std::map<std::string, std::string> identity_on(const EqTheory& t) {
  std::map<std::string, std::string> m;
  for (const auto& n : t.declared_names()) m[n] = n;
  return m;
}

// Where each declaration of `over` ended up in `entry`, following the
// combinator chain back to `over`.
std::optional<std::map<std::string, std::string>> traced_image(
    const Library& lib, const std::string& entry, const std::string& over) {
  if (entry == over) return identity_on(lib.at(over));
  auto e = find_entry(lib, entry);
  if (!e) return std::nullopt;
  const TheoryExpr& x = **e;
  switch (x.kind) {
    case TheoryExpr::Kind::Base:
      return std::nullopt;
    case TheoryExpr::Kind::Extend:
      return traced_image(lib, x.parent, over);
    case TheoryExpr::Kind::Rename: {
      auto img = traced_image(lib, x.parent, over);
      if (!img) return std::nullopt;
      std::map<std::string, std::string> m(x.mapping.begin(), x.mapping.end());
      for (auto& [o, n] : *img)
        if (auto it = m.find(n); it != m.end()) n = it->second;
      return img;
    }
    case TheoryExpr::Kind::Combine: {
      if (auto img = traced_image(lib, x.left, over)) return img;
      auto img = traced_image(lib, x.right, over);
      if (!img) return std::nullopt;
      const auto& rr = lib.rightRenamings.at(x.name);
      for (auto& [o, n] : *img)
        if (auto it = rr.find(n); it != rr.end()) n = it->second;
      return img;
    }
  }
  return std::nullopt;
}

std::optional<TypeExpr> type_of(const EqTheory& t, const std::string& name) {
  if (t.sort.name == name) return t.sort.type;
  for (const auto& f : t.funcTypes)
    if (f.name == name) return f.type;
  for (const auto& a : t.axioms)
    if (a.name == name) return a.type();
  return std::nullopt;
}

// Image of `over` in `side`: traced through the combinators when `over` is
// an ancestor, otherwise by matching names and types.
std::map<std::string, std::string> image_of(const Library& lib,
                                            const TheoryExpr& e,
                                            const std::string& side) {
  if (auto img = traced_image(lib, side, e.over)) return *img;
  const EqTheory& o = lib.at(e.over);
  const EqTheory& s = lib.at(side);
  for (const auto& n : o.declared_names()) {
    auto ty = type_of(s, n);
    if (!ty || !(*ty == *type_of(o, n)))
      throw ExpandError(ExpandError::Kind::Clash, e.name,
                        "'" + e.over + "' is not a common part of '" + side +
                            "': '" + n + "' is missing or has another type");
  }
  return identity_on(o);
}

Expansion expand_combine(const TheoryExpr& e, const Library& lib) {
  const EqTheory& l = lib.at(e.left);
  const EqTheory& r = lib.at(e.right);
  auto img_l = image_of(lib, e, e.left);
  auto img_r = image_of(lib, e, e.right);

  std::map<std::string, std::string> to_left;  // right name → result name
  std::set<std::string> identified;
  for (const auto& [o, rn] : img_r) {
    const std::string& ln = img_l.at(o);
    identified.insert(ln);
    if (rn != ln) to_left[rn] = ln;
  }

  EqTheory rr;
  try {
    rr = rename(r, RenameScheme::explicit_map(to_left));
  } catch (const CollisionError& err) {
    throw ExpandError(ExpandError::Kind::Clash, e.name,
                      "identifying '" + e.right + "' along '" + e.over +
                          "' collides on '" + err.name + "'");
  }

  Expansion out;
  out.rightRenaming = to_left;
  EqTheory t = retitle(l, e.name);
  auto left_names = l.declared_names();
  std::set<std::string> taken(left_names.begin(), left_names.end());

  auto admit = [&](const std::string& name, const TypeExpr& ty) {
    if (identified.count(name)) {
      auto lt = type_of(l, name);
      if (!lt || !(*lt == ty))
        throw ExpandError(ExpandError::Kind::Clash, e.name,
                          "'" + name + "' is identified along '" + e.over +
                              "' but has different types in '" + e.left +
                              "' and '" + e.right + "'");
      return false;
    }
    if (taken.count(name))
      throw ExpandError(ExpandError::Kind::Clash, e.name,
                        "'" + name + "' is declared by both '" + e.left +
                            "' and '" + e.right + "' but not by '" + e.over +
                            "'");
    taken.insert(name);
    return true;
  };

  if (rr.sort.name != t.sort.name)
    throw ExpandError(ExpandError::Kind::Clash, e.name,
                      "sorts '" + t.sort.name + "' and '" + rr.sort.name +
                          "' are not identified by '" + e.over + "'");
  for (const auto& f : rr.funcTypes)
    if (admit(f.name, f.type)) t.funcTypes.push_back(f);
  for (const auto& a : rr.axioms)
    if (admit(a.name, a.type())) t.axioms.push_back(a);
  t.waist = l.waist == r.waist ? l.waist : std::min(l.waist, r.waist);
  out.theory = std::move(t);
  return out;
}

Expansion expand_entry(const TheoryExpr& e, const Library& lib) {
  try {
    switch (e.kind) {
      case TheoryExpr::Kind::Base:
        return {extract(e.decl), {}};
      case TheoryExpr::Kind::Extend: {
        const EqTheory& parent = lib.at(e.parent);
        auto names = parent.declared_names();
        for (const auto& c : e.newDecls) {
          if (c.type.kind == TypeExpr::Kind::Set)
            throw ExpandError(ExpandError::Kind::Shape, e.name,
                              "'" + c.name + "' re-declares the sort");
          if (std::find(names.begin(), names.end(), c.name) != names.end())
            throw ExpandError(ExpandError::Kind::Clash, e.name,
                              "'" + c.name + "' is already declared by '" +
                                  e.parent + "'");
        }
        RecordDecl d = embed(retitle(parent, e.name));
        d.fields.insert(d.fields.end(), e.newDecls.begin(), e.newDecls.end());
        return {extract(d), {}};
      }
      case TheoryExpr::Kind::Rename: {
        std::map<std::string, std::string> m;
        std::set<std::string> targets;
        for (const auto& [from, to] : e.mapping) {
          if (!m.emplace(from, to).second || !targets.insert(to).second)
            throw ExpandError(ExpandError::Kind::BadRename, e.name,
                              "mapping is not injective at '" + from + "'");
        }
        return {retitle(rename(lib.at(e.parent), RenameScheme::explicit_map(m)),
                        e.name),
                {}};
      }
      case TheoryExpr::Kind::Combine:
        return expand_combine(e, lib);
    }
  } catch (const ShapeError& err) {
    throw ExpandError(ExpandError::Kind::Shape, e.name, err.what());
  } catch (const CollisionError& err) {
    throw ExpandError(ExpandError::Kind::Clash, e.name, err.what());
  } catch (const std::invalid_argument& err) {
    throw ExpandError(ExpandError::Kind::BadRename, e.name, err.what());
  }
  return {};
}

void validate(const std::vector<TheoryExpr>& entries) {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    for (const auto& p : e.parents())
      if (!seen.count(p))
        throw ExpandError(ExpandError::Kind::UnknownTheory, e.name,
                          "'" + p + "' is not defined earlier in the library");
    if (!seen.insert(e.name).second)
      throw ExpandError(ExpandError::Kind::DuplicateTheory, e.name,
                        "theory is defined twice");
  }
}

void commit(Library& lib, const TheoryExpr& e, Expansion x) {
  lib.expanded.emplace(e.name, std::move(x.theory));
  if (e.kind == TheoryExpr::Kind::Combine)
    lib.rightRenamings.emplace(e.name, std::move(x.rightRenaming));
}

}  // namespace

EqTheory expand(const TheoryExpr& e, const Library& lib) {
  for (const auto& p : e.parents())
    if (!lib.expanded.count(p))
      throw ExpandError(ExpandError::Kind::UnknownTheory, e.name,
                        "'" + p + "' has not been expanded");
  return expand_entry(e, lib).theory;
}

Library expand_library_serial(std::vector<TheoryExpr> entries) {
  validate(entries);
  Library lib;
  lib.entries = std::move(entries);
  for (const auto& e : lib.entries) commit(lib, e, expand_entry(e, lib));
  return lib;
}

Library expand_library(std::vector<TheoryExpr> entries, int jobs) {
  validate(entries);
  if (jobs <= 1) return expand_library_serial(std::move(entries));

  std::map<std::string, std::size_t> level_of;
  std::vector<std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::size_t lv = 0;
    for (const auto& p : entries[i].parents()) lv = std::max(lv, level_of[p] + 1);
    level_of[entries[i].name] = lv;
    if (levels.size() <= lv) levels.resize(lv + 1);
    levels[lv].push_back(i);
  }

  Library lib;
  lib.entries = std::move(entries);
  for (const auto& level : levels) {
    const auto n = static_cast<std::ptrdiff_t>(level.size());
    std::vector<std::optional<Expansion>> results(level.size());
    bool failed = false;
#pragma omp parallel for schedule(dynamic) num_threads(jobs) reduction(|| : failed)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      try {
        results[k] = expand_entry(lib.entries[level[k]], lib);
      } catch (...) {
        failed = true;
      }
    }
    // The sequential run reports the same first failure.
    if (failed) return expand_library_serial(std::move(lib.entries));
    for (std::size_t k = 0; k < level.size(); ++k)
      commit(lib, lib.entries[level[k]], std::move(*results[k]));
  }
  return lib;
}

}  // namespace theoryforge
