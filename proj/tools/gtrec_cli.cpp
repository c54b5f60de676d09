// Command-line front end over the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "gtrec/gtrec.h"

namespace {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GeneDeleter {
  void operator()(gtrec_gene_tree* g) const { gtrec_gene_tree_free(g); }
};
struct SpeciesDeleter {
  void operator()(gtrec_species_tree* s) const { gtrec_species_tree_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { gtrec_string_free(s); }
};
using GenePtr = std::unique_ptr<gtrec_gene_tree, GeneDeleter>;
using SpeciesPtr = std::unique_ptr<gtrec_species_tree, SpeciesDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(gtrec_status st) {
  switch (st) {
    case GTREC_OK: return 0;
    case GTREC_NEGATIVE: return 1;
    default: return 2;
  }
}

GenePtr load_gene(const std::string& path, const std::string& sidecar) {
  const std::string text = slurp(path);
  std::optional<std::string> side;
  if (!sidecar.empty()) side = slurp(sidecar);
  gtrec_gene_tree* g = nullptr;
  if (gtrec_gene_tree_parse(text.c_str(), side ? side->c_str() : nullptr, &g) != GTREC_OK) {
    throw InputError(path + ": " + gtrec_last_error());
  }
  return GenePtr(g);
}

SpeciesPtr load_species(const std::string& path) {
  const std::string text = slurp(path);
  gtrec_species_tree* s = nullptr;
  if (gtrec_species_tree_parse(text.c_str(), &s) != GTREC_OK) {
    throw InputError(path + ": " + gtrec_last_error());
  }
  return SpeciesPtr(s);
}

// Runs one API call. On success or a negative verdict the JSON is printed as
// is or handed to `render`; anything else goes to stderr.
template <class Call, class Render>
int run(Call&& call, bool as_json, Render&& render) {
  char* raw = nullptr;
  const gtrec_status st = call(&raw);
  StringPtr out(raw);
  if (!out) {
    std::cerr << "error: " << gtrec_last_error() << "\n";
    return exit_code(st);
  }
  if (st != GTREC_OK && st != GTREC_NEGATIVE) std::cerr << "error: " << gtrec_last_error() << "\n";
  if (as_json) {
    std::cout << out.get();
  } else {
    render(Json::parse(out.get()), st);
  }
  return exit_code(st);
}

std::string join(const Json& arr) {
  std::string s;
  for (const auto& v : arr) {
    if (!s.empty()) s += ' ';
    s += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return s;
}

void print_axioms(const Json& axioms) {
  for (const auto& a : axioms) {
    if (!a["checked"].get<bool>()) continue;
    std::cout << a["axiom"].get<std::string>() << (a["pass"].get<bool>() ? " pass" : " FAIL");
    if (!a["vertices"].empty()) std::cout << " vertices: " << join(a["vertices"]);
    if (!a["edges"].empty()) std::cout << " edges: " << join(a["edges"]);
    if (!a["pairs"].empty()) std::cout << " pairs: " << join(a["pairs"]);
    std::cout << "\n";
  }
}

void print_lines(const char* title, const Json& triples) {
  std::cout << title << "\n";
  for (const auto& t : triples) std::cout << "  " << t.get<std::string>() << "\n";
}

std::string ref(const Json& name, const Json& id) {
  return name.is_null() ? "@" + id.dump() : name.get<std::string>();
}

void print_map(const Json& map) {
  for (const auto& row : map) {
    const Json& img = row["image"];
    const Json lower = row["image_kind"] == "edge" ? img[1] : img;
    std::cout << ref(row["gene"], row["gene_vertex"]) << ' ' << row["image_kind"].get<std::string>() << ' '
              << ref(row["image_label"], lower) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Species trees and reconciliation maps for event-labeled gene trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gtrec_version()));

  bool as_json = false;
  bool restricted = false;
  std::uint64_t seed = 1;
  std::string gene, sidecar, species, map, triples_file, out_dir;
  app.add_flag("--json", as_json, "Print the JSON report");

  auto gene_opts = [&](CLI::App* sub) {
    sub->add_option("--gene,-g", gene, "Gene tree in annotated Newick")->required()->check(CLI::ExistingFile);
    sub->add_option("--sidecar", sidecar, "gene<TAB>species file")->check(CLI::ExistingFile);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "Print the JSON report");
  };

  auto* validate = app.add_subcommand("validate", "Observability axioms O1-O3 (and O3.A)");
  gene_opts(validate);
  common(validate);
  validate->add_flag("--restricted", restricted, "Also check O3.A");

  auto* triples = app.add_subcommand("triples", "Informative triples, species triples and BUILD");
  triples->add_option("--gene,-g", gene, "Gene tree in annotated Newick")->check(CLI::ExistingFile);
  triples->add_option("--sidecar", sidecar, "gene<TAB>species file")->check(CLI::ExistingFile);
  triples->add_option("--from", triples_file, "Run BUILD on a triple list instead")->check(CLI::ExistingFile);
  common(triples);

  auto* infer = app.add_subcommand("infer", "Species tree and reconciliation map");
  gene_opts(infer);
  common(infer);
  infer->add_flag("--restricted", restricted, "Require a restricted map");
  bool planted = false;
  infer->add_flag("--planted", planted, "Write the species tree with its planted root");

  auto* reconcile = app.add_subcommand("reconcile", "Validate a supplied map against a species tree");
  gene_opts(reconcile);
  common(reconcile);
  reconcile->add_option("--species,-s", species, "Species tree in Newick")->required()->check(CLI::ExistingFile);
  reconcile->add_option("--map,-m", map, "Map file")->required()->check(CLI::ExistingFile);
  reconcile->add_flag("--restricted", restricted, "Also check M2.iv");

  auto* timecheck = app.add_subcommand("timecheck", "Time consistency of a reconciliation map");
  gene_opts(timecheck);
  common(timecheck);
  timecheck->add_option("--species,-s", species, "Species tree in Newick")->required()->check(CLI::ExistingFile);
  timecheck->add_option("--map,-m", map, "Map file; the constructed map when omitted")->check(CLI::ExistingFile);

  auto* simulate = app.add_subcommand("simulate", "Simulate histories and their observable gene trees");
  common(simulate);
  gtrec_sim_config cfg{};
  cfg.count = 1;
  simulate->add_option("--species,-s", species, "Species tree; branch lengths give times")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--dup", cfg.duplication_rate, "Duplication rate")->check(CLI::NonNegativeNumber);
  simulate->add_option("--hgt", cfg.transfer_rate, "Transfer rate")->check(CLI::NonNegativeNumber);
  simulate->add_option("--loss", cfg.loss_rate, "Loss rate")->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", seed, "Seed of the first scenario");
  simulate->add_option("--count", cfg.count, "Number of scenarios");
  simulate->add_option("--max-genes", cfg.max_genes, "Bound on history size");
  simulate->add_flag("--restricted", restricted, "Admit only trees passing O3.A");
  simulate->add_option("--out-dir", out_dir, "Write one gene tree file per scenario and scenarios.json");

  auto* oracle = app.add_subcommand("oracle", "Triple consistency against exhaustive search");
  gene_opts(oracle);
  common(oracle);
  oracle->add_flag("--restricted", restricted, "Restricted maps");

  bool nhx = false;
  auto* convert = app.add_subcommand("convert", "Re-serialize a gene tree");
  gene_opts(convert);
  convert->add_flag("--nhx", nhx, "Write NHX tags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      auto g = load_gene(gene, sidecar);
      return run([&](char** o) { return gtrec_validate(g.get(), restricted, o); }, as_json,
                 [](const Json& j, gtrec_status) {
                   std::cout << "observable: " << (j["observable"].get<bool>() ? "yes" : "no") << "\n";
                   print_axioms(j["axioms"]);
                   if (!j["multi_transfer"].empty()) {
                     std::cout << "note: several transfer edges leave vertices " << join(j["multi_transfer"]) << "\n";
                   }
                 });
    }
    if (*triples) {
      if (!triples_file.empty()) {
        const std::string text = slurp(triples_file);
        return run([&](char** o) { return gtrec_build(text.c_str(), o); }, as_json,
                   [](const Json& j, gtrec_status) {
                     if (j["consistent"].get<bool>()) {
                       std::cout << j["tree"].get<std::string>() << "\n";
                       std::cout << "unique: " << (j["unique"].get<bool>() ? "yes" : "no") << "\n";
                     } else {
                       std::cout << "inconsistent; connected Aho graph on " << join(j["witness"]) << "\n";
                     }
                   });
      }
      if (gene.empty()) throw InputError("triples needs --gene or --from");
      auto g = load_gene(gene, sidecar);
      return run([&](char** o) { return gtrec_triples(g.get(), o); }, as_json, [](const Json& j, gtrec_status) {
        print_lines("R0:", j["R0"]);
        int i = 1;
        for (const auto& e : j["transfer_triples"]) {
          std::cout << "R" << i++ << " (edge " << e["edge"][0] << "," << e["edge"][1] << "):\n";
          for (const auto& t : e["triples"]) std::cout << "  " << t.get<std::string>() << "\n";
        }
        print_lines("S:", j["S"]);
        if (j["consistent"].get<bool>()) {
          std::cout << "consistent: " << j["species_tree"].get<std::string>() << "\n";
        } else {
          std::cout << "inconsistent\n";
        }
      });
    }
    if (*infer) {
      auto g = load_gene(gene, sidecar);
      return run([&](char** o) { return gtrec_infer(g.get(), restricted, o); }, as_json,
                 [&](const Json& j, gtrec_status st) {
                   if (st == GTREC_REJECTED) {
                     print_axioms(j["observability"]["axioms"]);
                     return;
                   }
                   if (st == GTREC_NEGATIVE) {
                     std::cout << j["message"].get<std::string>() << "\n";
                     return;
                   }
                   std::cout << j[planted ? "species_tree_planted" : "species_tree"].get<std::string>() << "\n";
                   print_map(j["map"]);
                 });
    }
    if (*reconcile) {
      auto g = load_gene(gene, sidecar);
      auto s = load_species(species);
      const std::string text = slurp(map);
      return run([&](char** o) { return gtrec_reconcile(g.get(), s.get(), text.c_str(), restricted, o); },
                 as_json, [](const Json& j, gtrec_status) {
                   std::cout << (j["valid"].get<bool>() ? "valid" : "invalid") << "\n";
                   print_axioms(j["axioms"]);
                 });
    }
    if (*timecheck) {
      auto g = load_gene(gene, sidecar);
      auto s = load_species(species);
      std::optional<std::string> text;
      if (!map.empty()) text = slurp(map);
      return run([&](char** o) { return gtrec_timecheck(g.get(), s.get(), text ? text->c_str() : nullptr, o); },
                 as_json, [](const Json& j, gtrec_status) {
                   if (j["feasible"].get<bool>()) {
                     std::cout << "feasible\n";
                     std::cout << "gene times: " << join(j["witness"]["gene"]) << "\n";
                     std::cout << "species times: " << join(j["witness"]["species"]) << "\n";
                     return;
                   }
                   std::cout << "infeasible; cycle:\n";
                   for (const auto& step : j["cycle"]) {
                     std::cout << "  " << step["from"]["tree"].get<std::string>() << ' ' << step["from"]["vertex"]
                               << ' ' << step["relation"].get<std::string>() << ' '
                               << step["to"]["tree"].get<std::string>() << ' ' << step["to"]["vertex"] << "  ("
                               << step["reason"].get<std::string>() << ")\n";
                   }
                 });
    }
    if (*simulate) {
      auto s = load_species(species);
      cfg.seed = seed;
      cfg.restricted = restricted;
      return run([&](char** o) { return gtrec_simulate(s.get(), &cfg, o); }, as_json && out_dir.empty(),
                 [&](const Json& j, gtrec_status) {
                   if (!out_dir.empty()) {
                     std::filesystem::create_directories(out_dir);
                     std::ofstream(std::filesystem::path(out_dir) / "scenarios.json") << j.dump(2) << "\n";
                   }
                   for (const auto& sc : j["scenarios"]) {
                     const std::string line =
                         sc["observable"].get<bool>() ? sc["gene_tree"].get<std::string>()
                                                      : "# unobservable: " + sc["failure"].get<std::string>();
                     if (out_dir.empty()) {
                       std::cout << line << "\n";
                     } else if (sc["observable"].get<bool>()) {
                       std::ofstream(std::filesystem::path(out_dir) /
                                     ("scenario_" + sc["seed"].dump() + ".nwk"))
                           << line << "\n";
                     }
                   }
                 });
    }
    if (*oracle) {
      auto g = load_gene(gene, sidecar);
      return run([&](char** o) { return gtrec_oracle(g.get(), restricted, o); }, as_json,
                 [](const Json& j, gtrec_status) {
                   std::cout << "species triples consistent: " << (j["consistent"].get<bool>() ? "yes" : "no") << "\n";
                   std::cout << "map exists: " << (j["map_exists"].get<bool>() ? "yes" : "no");
                   if (!j["witness"].is_null()) std::cout << " (" << j["witness"].get<std::string>() << ")";
                   std::cout << "\nequivalent: " << (j["equivalent"].get<bool>() ? "yes" : "NO") << "\n";
                 });
    }
    if (*convert) {
      auto g = load_gene(gene, sidecar);
      char* raw = nullptr;
      const gtrec_status st = gtrec_gene_tree_serialize(g.get(), nhx, &raw);
      StringPtr out(raw);
      if (st != GTREC_OK) {
        std::cerr << "error: " << gtrec_last_error() << "\n";
        return 2;
      }
      std::cout << out.get();
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
