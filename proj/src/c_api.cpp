#include "gtrec/gtrec.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "gtrec/build.hpp"
#include "gtrec/error.hpp"
#include "gtrec/io.hpp"
#include "report.hpp"

struct gtrec_gene_tree {
  gtrec::GeneTree tree;
};

struct gtrec_species_tree {
  gtrec::SpeciesTreeDocument doc;
  gtrec::PlantedSpeciesTree planted;
};

namespace {

using gtrec::report::Json;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

gtrec_status fail(gtrec_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

// Runs `body`, translating exceptions. Domain errors raised while reading
// input count as input errors.
template <class F>
gtrec_status guarded(bool parsing, F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const gtrec::Error& e) {
    if (e.code() == gtrec::ErrorCode::kParse || parsing) return fail(GTREC_INPUT_ERROR, e.what());
    return fail(GTREC_DOMAIN_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GTREC_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(GTREC_INTERNAL_ERROR, e.what());
  }
}

gtrec_status emit(const Json& j, char** out) {
  *out = dup_string(j.dump(2) + "\n");
  return GTREC_OK;
}

bool bad_out(char** out) {
  if (out) *out = nullptr;
  return out == nullptr;
}

}  // namespace

extern "C" {

const char* gtrec_version(void) { return gtrec::report::kVersion; }

const char* gtrec_last_error(void) { return g_last_error.c_str(); }

void gtrec_string_free(char* s) { std::free(s); }

gtrec_status gtrec_gene_tree_parse(const char* newick, const char* sidecar_tsv, gtrec_gene_tree** out) {
  if (!out) return fail(GTREC_INVALID_ARGUMENT, "null output handle");
  *out = nullptr;
  if (!newick) return fail(GTREC_INVALID_ARGUMENT, "null gene tree text");
  return guarded(true, [&] {
    std::map<std::string, std::string> sidecar;
    if (sidecar_tsv) sidecar = gtrec::parse_sidecar(sidecar_tsv);
    *out = new gtrec_gene_tree{gtrec::parse_gene_tree(newick, sidecar_tsv ? &sidecar : nullptr)};
    return GTREC_OK;
  });
}

void gtrec_gene_tree_free(gtrec_gene_tree* g) { delete g; }

size_t gtrec_gene_tree_size(const gtrec_gene_tree* g) { return g ? g->tree.size() : 0; }

gtrec_status gtrec_gene_tree_serialize(const gtrec_gene_tree* g, int nhx, char** out) {
  if (bad_out(out) || !g) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    *out = dup_string((nhx ? gtrec::serialize_gene_tree_nhx(g->tree) : gtrec::serialize_gene_tree(g->tree)) +
                      "\n");
    return GTREC_OK;
  });
}

gtrec_status gtrec_species_tree_parse(const char* newick, gtrec_species_tree** out) {
  if (!out) return fail(GTREC_INVALID_ARGUMENT, "null output handle");
  *out = nullptr;
  if (!newick) return fail(GTREC_INVALID_ARGUMENT, "null species tree text");
  return guarded(true, [&] {
    auto doc = gtrec::parse_species_tree(newick);
    auto planted = gtrec::to_planted(doc);
    *out = new gtrec_species_tree{std::move(doc), std::move(planted)};
    return GTREC_OK;
  });
}

void gtrec_species_tree_free(gtrec_species_tree* s) { delete s; }

gtrec_status gtrec_species_tree_serialize(const gtrec_species_tree* s, int planted, char** out) {
  if (bad_out(out) || !s) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    *out = dup_string(gtrec::serialize_species_tree(s->planted, planted != 0) + "\n");
    return GTREC_OK;
  });
}

gtrec_status gtrec_validate(const gtrec_gene_tree* g, int restricted, char** json) {
  if (bad_out(json) || !g) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    Json j = gtrec::report::header("validate");
    j["restricted"] = restricted != 0;
    j["gene_tree"] = gtrec::serialize_gene_tree(g->tree);
    j.update(gtrec::report::observability(gtrec::check_observability(g->tree, restricted != 0)));
    Json parts = Json::array();
    auto p = gtrec::component_partition(g->tree);
    for (const auto& block : p.blocks) {
      Json names = Json::array();
      for (auto leaf : block) names.push_back(g->tree.gene_name(leaf));
      parts.push_back(names);
    }
    j["components"] = parts;
    j["components_partition_genes"] = p.is_partition;
    if (!p.is_partition) j["partition_failure"] = p.failure;
    return emit(j, json);
  });
}

gtrec_status gtrec_triples(const gtrec_gene_tree* g, char** json) {
  if (bad_out(json) || !g) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    using namespace gtrec;
    const GeneTree& t = g->tree;
    const InformativeTriples inf = informative_triples(t);
    Json j = report::header("triples");
    j["gene_tree"] = serialize_gene_tree(t);
    j["R0"] = report::triples(inf.r0);
    Json per = Json::array();
    for (std::size_t i = 0; i < inf.per_transfer.size(); ++i) {
      const Edge e = t.transfer_edges()[i];
      per.push_back({{"edge", {e.parent, e.child}}, {"triples", report::triples(inf.per_transfer[i])}});
    }
    j["transfer_triples"] = per;
    j["R"] = report::triples(inf.all);
    const TripleSet s = species_triples(t);
    j["S"] = report::triples(s);
    const BuildResult b = build(s, t.species());
    j["consistent"] = b.consistent();
    j["species_tree"] = b.consistent() ? Json(serialize_species_tree(*b.tree)) : Json(nullptr);
    if (!b.consistent()) j["witness"] = b.witness;
    emit(j, json);
    return b.consistent() ? GTREC_OK : GTREC_NEGATIVE;
  });
}

gtrec_status gtrec_build(const char* triples_text, char** json) {
  if (bad_out(json) || !triples_text) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  gtrec::TripleSet set;
  gtrec_status st = guarded(true, [&] {
    set = gtrec::parse_triples(triples_text);
    if (set.empty()) gtrec::DomainError("no triples given");
    return GTREC_OK;
  });
  if (st != GTREC_OK) return st;
  return guarded(false, [&] {
    using namespace gtrec;
    const BuildResult b = build(set);
    Json j = report::header("build");
    j["triples"] = report::triples(set);
    j["labels"] = set.labels();
    j["consistent"] = b.consistent();
    j["tree"] = b.consistent() ? Json(serialize_species_tree(*b.tree)) : Json(nullptr);
    j["unique"] = b.consistent() ? Json(b.tree->is_binary()) : Json(nullptr);
    j["witness"] = b.witness;
    emit(j, json);
    return b.consistent() ? GTREC_OK : GTREC_NEGATIVE;
  });
}

gtrec_status gtrec_infer(const gtrec_gene_tree* g, int restricted, char** json) {
  if (bad_out(json) || !g) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    using R = gtrec::ReconcResult::Status;
    const auto r = gtrec::reconc_t(g->tree, restricted != 0);
    emit(gtrec::report::reconciliation(g->tree, r, restricted != 0), json);
    switch (r.status) {
      case R::kUnobservable:
        return fail(GTREC_REJECTED, "gene tree violates the observability axioms");
      case R::kNoSpeciesTree:
        return GTREC_NEGATIVE;
      case R::kOk:
        break;
    }
    if (!r.validation.all_pass()) {
      return fail(GTREC_INTERNAL_ERROR, "constructed map failed validation");
    }
    return GTREC_OK;
  });
}

gtrec_status gtrec_reconcile(const gtrec_gene_tree* g, const gtrec_species_tree* s, const char* map_text,
                             int restricted, char** json) {
  if (bad_out(json) || !g || !s || !map_text) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  gtrec::ReconciliationMap mu;
  gtrec_status st = guarded(true, [&] {
    mu = gtrec::parse_map(map_text, g->tree, s->planted);
    return GTREC_OK;
  });
  if (st != GTREC_OK) return st;
  return guarded(false, [&] {
    using namespace gtrec;
    const ValidationReport r = validate_map(g->tree, s->planted, mu, restricted != 0);
    Json j = report::header("reconcile");
    j["restricted"] = restricted != 0;
    j["gene_tree"] = serialize_gene_tree(g->tree);
    j["species_tree"] = serialize_species_tree(s->planted, false);
    j["species_tree_planted"] = serialize_species_tree(s->planted, true);
    j["species_vertices"] = report::species_vertices(s->planted);
    j["valid"] = r.all_pass();
    j["map"] = report::map(g->tree, s->planted, mu);
    Json axioms = Json::array();
    for (const AxiomVerdict* v : r.verdicts()) axioms.push_back(report::verdict(*v));
    j["axioms"] = axioms;
    j["violations"] = report::validation(r);
    emit(j, json);
    return r.all_pass() ? GTREC_OK : GTREC_NEGATIVE;
  });
}

gtrec_status gtrec_timecheck(const gtrec_gene_tree* g, const gtrec_species_tree* s, const char* map_text,
                             char** json) {
  if (bad_out(json) || !g || !s) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  gtrec::ReconciliationMap mu;
  gtrec_status st = guarded(true, [&] {
    mu = map_text ? gtrec::parse_map(map_text, g->tree, s->planted) : gtrec::construct_map(g->tree, s->planted);
    return GTREC_OK;
  });
  if (st != GTREC_OK) return st;
  return guarded(false, [&] {
    const auto r = gtrec::check_time_consistency(g->tree, s->planted, mu);
    Json j = gtrec::report::time_check(g->tree, s->planted, r);
    j["map"] = gtrec::report::map(g->tree, s->planted, mu);
    emit(j, json);
    return r.feasible ? GTREC_OK : GTREC_NEGATIVE;
  });
}

gtrec_status gtrec_simulate(const gtrec_species_tree* s, const gtrec_sim_config* cfg, char** json) {
  if (bad_out(json) || !s || !cfg) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    using namespace gtrec;
    if (s->doc.planted()) DomainError("simulation needs an unplanted species tree");
    const TimedSpeciesTree timed = to_timed(s->doc);
    Json j = report::header("simulate");
    j["config"] = {{"duplication_rate", cfg->duplication_rate},
                   {"transfer_rate", cfg->transfer_rate},
                   {"loss_rate", cfg->loss_rate},
                   {"seed", cfg->seed},
                   {"count", cfg->count},
                   {"max_genes", cfg->max_genes},
                   {"restricted", cfg->restricted != 0}};
    j["species_tree"] = serialize_species_tree(s->doc.tree);
    j["species_times"] = timed.time;
    Json scenarios = Json::array();
    for (std::uint32_t i = 0; i < cfg->count; ++i) {
      ScenarioConfig sc;
      sc.duplication_rate = cfg->duplication_rate;
      sc.transfer_rate = cfg->transfer_rate;
      sc.loss_rate = cfg->loss_rate;
      sc.seed = cfg->seed + i;
      if (cfg->max_genes) sc.max_genes = cfg->max_genes;
      Json row;
      row["seed"] = sc.seed;
      try {
        const TrueHistory h = simulate(timed, sc);
        const ObservableResult o = observable_part(h, cfg->restricted != 0);
        row["history"] = serialize_history(h);
        row["extant_genes"] = h.extant().size();
        row["observable"] = o.observable();
        row["gene_tree"] = o.observable() ? Json(serialize_gene_tree(*o.tree)) : Json(nullptr);
        if (!o.observable()) row["failure"] = o.failure;
      } catch (const Error& e) {
        row["observable"] = false;
        row["gene_tree"] = nullptr;
        row["failure"] = e.what();
      }
      scenarios.push_back(row);
    }
    j["scenarios"] = scenarios;
    return emit(j, json);
  });
}

gtrec_status gtrec_oracle(const gtrec_gene_tree* g, int restricted, char** json) {
  if (bad_out(json) || !g) return fail(GTREC_INVALID_ARGUMENT, "null argument");
  return guarded(false, [&] {
    using namespace gtrec;
    const EquivalenceResult r = theorem_equivalence(g->tree, restricted != 0);
    Json j = report::header("oracle");
    j["restricted"] = restricted != 0;
    j["gene_tree"] = serialize_gene_tree(g->tree);
    j["species_triples"] = report::triples(species_triples(g->tree));
    j["consistent"] = r.consistent;
    j["map_exists"] = r.oracle.exists;
    j["witness"] = r.oracle.witness ? Json(serialize_species_tree(*r.oracle.witness)) : Json(nullptr);
    j["trees_checked"] = r.oracle.trees_checked;
    j["equivalent"] = r.holds();
    emit(j, json);
    return r.holds() ? GTREC_OK : GTREC_NEGATIVE;
  });
}

}  // extern "C"
