#include <doctest.h>

#include <json.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zsm_cli/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = zsm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("atoms report") {
    auto o = call({"atoms", "--ground", "[-2,-1,1,2]"});
    REQUIRE(o.code == 0);
    auto r = o.report();
    CHECK(r["schema"] == zsm::cli::kSchema);
    CHECK(r["command"] == "atoms");
    CHECK(r["results"]["atoms"].size() == 4);
    CHECK(r["results"]["davenport"] == 3);
    CHECK(r["complete"] == true);
  }

  TEST_CASE("factorize report") {
    auto o = call({"factorize", "--element", "3^2 2^3 -2^3 -1^6", "--lengths-only"});
    REQUIRE(o.code == 0);
    CHECK(o.report()["results"]["lengths"] == json::array({4, 5}));
  }

  TEST_CASE("elasticity report") {
    auto o = call({"elasticity", "--spec", R"({"finite":[-2,-1],"aps":[{"start":1,"step":2}]})"});
    REQUIRE(o.code == 0);
    CHECK(o.report()["results"]["accepted"] == false);
  }

  TEST_CASE("exit codes") {
    CHECK(call({"atoms", "--ground", "[1,2]"}).code == zsm::cli::invalid_input);
    CHECK(call({"factorize", "--element", "1 2"}).code == zsm::cli::invalid_input);
    CHECK(call({"nonsense"}).code == zsm::cli::invalid_input);
    auto b = call({"--budget-nodes", "3", "factorize", "--element", "3^2 2^3 -2^3 -1^6"});
    CHECK(b.code == zsm::cli::budget_exhausted);
    CHECK(b.report()["complete"] == false);
  }

  TEST_CASE("reports are deterministic") {
    std::vector<std::string> args{"invariants", "--element", "3^2 2^3 -2^3 -1^6", "--which", "c,cmon,delta"};
    auto a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("csv output") {
    auto o = call({"--csv", "factorize", "--element", "1 -1", "--lengths-only"});
    CHECK(o.code == 0);
    CHECK(o.out.find('{') == std::string::npos);
  }

  TEST_CASE("batch") {
    auto dir = std::filesystem::temp_directory_path();
    auto empty = dir / "zsm_empty_manifest.json";
    std::ofstream(empty) << R"({"jobs":[]})";
    auto e = call({"batch", "--manifest", empty.string()});
    CHECK(e.code == 0);
    CHECK(e.report()["jobs"].size() == 0);

    auto mixed = dir / "zsm_mixed_manifest.json";
    std::ofstream(mixed) << R"({"jobs":[{"args":["atoms","--ground","[-1,1]"]},)"
                         << R"({"args":["atoms","--ground","[1,2]"]},)"
                         << R"({"args":["aamp","--lengths","3,5,7","--deltas","2"]}]})";
    for (bool conc : {false, true}) {
      std::vector<std::string> args{"batch", "--manifest", mixed.string()};
      if (conc) args.push_back("--concurrent");
      auto m = call(args);
      CHECK(m.code == zsm::cli::invalid_input);
      auto jobs = m.report()["jobs"];
      REQUIRE(jobs.size() == 3);
      CHECK(jobs[0]["exit"] == 0);
      CHECK(jobs[1]["exit"] == 3);
      CHECK(jobs[2]["exit"] == 0);
    }
  }
}
