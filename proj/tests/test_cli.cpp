#include <sstream>

#include "doctest.h"
#include "golden.hpp"
#include "test_util.hpp"
#include "theoryforge/cli.hpp"
#include "theoryforge/parser.hpp"

using namespace theoryforge;
namespace fs = std::filesystem;

namespace {

fs::path fixture(const std::string& name) { return testutil::data_dir() / "fixtures" / name; }
fs::path library() { return testutil::data_dir() / "library/algebra.lib"; }

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("cmd_check exit codes") {
  std::ostringstream out, err;
  CHECK(cmd_check({fixture("monoid.eqt")}, out, err) == kExitOk);
  CHECK(cmd_check({fixture("empty.eqt")}, out, err) == kExitOk);
  std::ostringstream dup;
  CHECK(cmd_check({fixture("duplicate_field.eqt")}, dup, err) == kExitCheck);
  CHECK(dup.str().find("DuplicateField") != std::string::npos);
  CHECK(dup.str().find("duplicate_field.eqt:4:5:") != std::string::npos);
  CHECK(cmd_check({fixture("unbound_name.eqt")}, out, err) == kExitCheck);
  CHECK(cmd_check({fixture("arity_mismatch.eqt")}, out, err) == kExitCheck);
  CHECK(cmd_check({fixture("does-not-exist.eqt")}, out, err) == kExitParse);

  testutil::TempDir tmp("check");
  write(tmp.path / "bad.eqt", "record M (A : Set) : Set where\n  field\n    e : \n");
  std::ostringstream perr;
  CHECK(cmd_check({tmp.path / "bad.eqt"}, out, perr) == kExitParse);
  CHECK(perr.str().find("bad.eqt:4:1: expected") != std::string::npos);
}

TEST_CASE("cmd_gen writes one file per construction plus the module") {
  testutil::TempDir tmp("gen");
  RunConfig cfg;
  cfg.outDir = tmp.path;
  std::ostringstream out, err;
  REQUIRE(cmd_gen(fixture("monoid.eqt"), cfg, out, err) == kExitOk);
  for (const char* f : {"MonoidSig", "MonoidProd", "MonoidLang", "MonoidHom", "module"})
    CHECK(fs::exists(tmp.path / "Monoid" / (std::string(f) + ".gen.eqt")));
  CHECK(testutil::count_files(tmp.path) == 5);

  auto hom = parse_file(testutil::slurp(tmp.path / "Monoid/MonoidHom.gen.eqt"));
  auto golden = parse_file(testutil::slurp(testutil::data_dir() / "golden/MonoidHom.eqt"));
  CHECK(golden::same_shape(hom[0], golden[0]));

  auto module = parse_file(testutil::slurp(tmp.path / "Monoid/module.gen.eqt"));
  REQUIRE(module.size() == 6);
  CHECK(decl_name(module[0]) == "Prod");
  CHECK(decl_name(module[1]) == "Monoid");
}

TEST_CASE("cmd_gen with no constructions writes nothing") {
  testutil::TempDir tmp("gen-empty");
  RunConfig cfg;
  cfg.outDir = tmp.path / "out";
  cfg.kinds.clear();
  std::ostringstream out, err;
  CHECK(cmd_gen(fixture("monoid.eqt"), cfg, out, err) == kExitOk);
  CHECK(testutil::count_files(cfg.outDir) == 0);
}

TEST_CASE("cmd_gen replaces outputs of a previous run with other constructions") {
  testutil::TempDir tmp("gen-stale");
  RunConfig cfg;
  cfg.outDir = tmp.path;
  std::ostringstream out, err;
  REQUIRE(cmd_gen(fixture("monoid.eqt"), cfg, out, err) == kExitOk);
  cfg.kinds = {GenKind::Monomorphism};
  REQUIRE(cmd_gen(fixture("monoid.eqt"), cfg, out, err) == kExitOk);
  CHECK(testutil::count_files(tmp.path) == 2);
  CHECK(fs::exists(tmp.path / "Monoid/MonoidMono.gen.eqt"));
}

TEST_CASE("cmd_gen failure codes") {
  testutil::TempDir tmp("gen-fail");
  RunConfig cfg;
  cfg.outDir = tmp.path / "out";
  std::ostringstream out, err;
  CHECK(cmd_gen(fixture("duplicate_field.eqt"), cfg, out, err) == kExitCheck);

  write(tmp.path / "hof.eqt", "record H (A : Set) : Set where\n field\n  f : (A → A) → A\n");
  std::ostringstream gerr;
  CHECK(cmd_gen(tmp.path / "hof.eqt", cfg, out, gerr) == kExitGeneration);
  CHECK(gerr.str().find("H") != std::string::npos);

  write(tmp.path / "syntax.eqt", "record (A : Set)");
  CHECK(cmd_gen(tmp.path / "syntax.eqt", cfg, out, err) == kExitParse);

  RunConfig bad = cfg;
  bad.suffixes[GenKind::Product] = "S";
  CHECK(cmd_gen(fixture("monoid.eqt"), bad, out, err) == kExitParse);
  CHECK(testutil::count_files(cfg.outDir) == 0);
}

TEST_CASE("cmd_lib summary counts theories, definitions and lines") {
  testutil::TempDir tmp("lib");
  RunConfig cfg;
  cfg.outDir = tmp.path;
  std::ostringstream out, err;
  REQUIRE(cmd_lib(library(), cfg, out, err) == kExitOk);
  CHECK(out.str().rfind("theories=78 definitions=390 lines=", 0) == 0);

  write(tmp.path / "one.lib", "theory C = base { (A : Set) }\ntheory M = extend C with { op : A → A → A }\n");
  std::ostringstream one;
  cfg.outDir = tmp.path / "one";
  cfg.kinds = {GenKind::Signature, GenKind::Hom};
  REQUIRE(cmd_lib(tmp.path / "one.lib", cfg, one, err) == kExitOk);
  CHECK(one.str().rfind("theories=2 definitions=6 lines=", 0) == 0);

  write(tmp.path / "bad.lib", "theory C = base { (A : Set) }\ntheory D = extend C with { A : Set }\n");
  std::ostringstream berr;
  CHECK(cmd_lib(tmp.path / "bad.lib", cfg, one, berr) == kExitGeneration);
  CHECK(berr.str().find("D: ShapeError") != std::string::npos);
  write(tmp.path / "syntax.lib", "theory C = base (A : Set)");
  CHECK(cmd_lib(tmp.path / "syntax.lib", cfg, one, err) == kExitParse);
}

TEST_CASE("outputs are identical across reruns and thread counts") {
  testutil::TempDir tmp("determinism");
  RunConfig cfg;
  cfg.kinds = parse_kind_list("sig,prod,termlang,open-termlang,hom,mono,endo");
  std::ostringstream out, err;
  std::vector<std::size_t> digests;
  for (int jobs : {1, 1, 8}) {
    cfg.parallelism = jobs;
    cfg.outDir = tmp.path / ("run" + std::to_string(digests.size()));
    REQUIRE(cmd_lib(library(), cfg, out, err) == kExitOk);
    digests.push_back(testutil::tree_digest(cfg.outDir));
  }
  CHECK(digests[0] == digests[1]);
  CHECK(digests[0] == digests[2]);
}

TEST_CASE("configuration") {
  RunConfig cfg;
  CHECK(cfg.kinds == default_kinds());
  apply_setting(cfg, "constructions", "hom, sig");
  CHECK(cfg.kinds == std::vector<GenKind>{GenKind::Hom, GenKind::Signature});
  apply_setting(cfg, "constructions", "");
  CHECK(cfg.kinds.empty());
  apply_setting(cfg, "suffix", "sig=Sg");
  CHECK(cfg.gen_options().suffixes.signature == "Sg");
  apply_setting(cfg, "jobs", "4");
  CHECK(cfg.parallelism == 4);
  apply_setting(cfg, "orient-assoc", "true");
  CHECK(cfg.forceOrientAssoc);
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(apply_setting(cfg, "jobs", "0"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "suffix", "hom=H"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "constructions", "evaluator"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), ConfigError);
  apply_setting(cfg, "suffix", "termlang=Sg");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  testutil::TempDir tmp("cfg");
  write(tmp.path / "theoryforge.cfg",
        "# settings\nconstructions = sig,hom\nout = generated\n\njobs = 2  -- two\n");
  RunConfig fromfile;
  load_config(fromfile, tmp.path / "theoryforge.cfg");
  CHECK(fromfile.kinds == std::vector<GenKind>{GenKind::Signature, GenKind::Hom});
  CHECK(fromfile.outDir == "generated");
  CHECK(fromfile.parallelism == 2);
  write(tmp.path / "bad.cfg", "jobs\n");
  CHECK_THROWS_AS(load_config(fromfile, tmp.path / "bad.cfg"), ConfigError);
}

TEST_CASE("cmd_normalize") {
  RunConfig cfg;
  std::ostringstream out, err;
  CHECK(cmd_normalize(fixture("monoid.eqt"), "op (op a e) (op e b)", cfg, out, err) == kExitOk);
  CHECK(out.str() == "op a b\n");
  std::ostringstream assoc;
  CHECK(cmd_normalize(fixture("monoid.eqt"), "op (op a b) c", cfg, assoc, err) == kExitOk);
  CHECK(assoc.str() == "op (op a b) c\n");
  cfg.forceOrientAssoc = true;
  std::ostringstream forced;
  CHECK(cmd_normalize(fixture("monoid.eqt"), "op (op a b) c", cfg, forced, err) == kExitOk);
  CHECK(forced.str() == "op a (op b c)\n");
  CHECK(cmd_normalize(fixture("monoid.eqt"), "op a", cfg, out, err) == kExitCheck);
  CHECK(cmd_normalize(fixture("monoid.eqt"), "op (a", cfg, out, err) == kExitParse);
}
