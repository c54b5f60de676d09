#include "report.hpp"

#include "gtrec/io.hpp"

namespace gtrec::report {

Json header(const char* command) {
  Json j;
  j["tool"] = kTool;
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

Json verdict(const AxiomVerdict& v) {
  Json j;
  j["axiom"] = v.axiom;
  j["checked"] = v.checked;
  j["pass"] = !v.checked || v.pass();
  j["vertices"] = v.vertices;
  Json edges = Json::array();
  for (const Edge& e : v.edges) edges.push_back({e.parent, e.child});
  j["edges"] = edges;
  Json pairs = Json::array();
  for (const auto& [a, b] : v.pairs) pairs.push_back({a, b});
  j["pairs"] = pairs;
  return j;
}

Json observability(const ObservabilityReport& r) {
  Json j;
  j["observable"] = r.all_pass();
  Json axioms = Json::array();
  for (const AxiomVerdict* v : r.verdicts()) axioms.push_back(verdict(*v));
  j["axioms"] = axioms;
  j["multi_transfer"] = r.multi_transfer;
  return j;
}

Json triples(const TripleSet& set) {
  Json j = Json::array();
  for (const Triple& t : set) j.push_back(to_string(t));
  return j;
}

Json species_vertices(const PlantedSpeciesTree& s) {
  const RootedTree& t = s.tree();
  Json j = Json::array();
  for (VertexId v = 0; v < t.size(); ++v) {
    Json row;
    row["id"] = v;
    row["parent"] = t.parent(v) == kNoVertex ? Json(nullptr) : Json(t.parent(v));
    row["label"] = t.label(v).empty() ? Json(nullptr) : Json(t.label(v));
    row["planted_root"] = v == s.planted_root();
    j.push_back(row);
  }
  return j;
}

Json map(const GeneTree& g, const PlantedSpeciesTree& s, const ReconciliationMap& mu) {
  Json j = Json::array();
  for (VertexId x = 0; x < g.size(); ++x) {
    Json row;
    row["gene_vertex"] = x;
    row["gene"] = g.tree().is_leaf(x) ? Json(g.gene_name(x)) : Json(nullptr);
    row["event"] = g.tree().is_leaf(x) ? Json(nullptr) : Json(std::string(1, event_code(g.event(x))));
    if (mu[x].is_vertex()) {
      row["image_kind"] = "vertex";
      row["image"] = mu[x].lower;
    } else {
      row["image_kind"] = "edge";
      row["image"] = {mu[x].upper, mu[x].lower};
    }
    const std::string& label = s.tree().label(mu[x].lower);
    row["image_label"] = label.empty() ? Json(nullptr) : Json(label);
    j.push_back(row);
  }
  return j;
}

Json validation(const ValidationReport& r) {
  Json j = Json::array();
  for (const AxiomVerdict* v : r.verdicts()) {
    if (v->checked && !v->pass()) j.push_back(verdict(*v));
  }
  return j;
}

Json reconciliation(const GeneTree& g, const ReconcResult& r, bool restricted) {
  Json j = header("infer");
  j["restricted"] = restricted;
  j["gene_tree"] = serialize_gene_tree(g);
  j["observability"] = observability(r.observability);
  if (r.status == ReconcResult::Status::kUnobservable) {
    j["consistent"] = nullptr;
    j["species_tree"] = nullptr;
    j["map"] = Json::array();
    j["violations"] = Json::array();
    j["message"] = "input violates the observability axioms";
    return j;
  }
  j["species_triples"] = triples(r.species_triples);
  j["consistent"] = r.status == ReconcResult::Status::kOk;
  if (r.status == ReconcResult::Status::kNoSpeciesTree) {
    j["species_tree"] = nullptr;
    j["map"] = Json::array();
    j["violations"] = Json::array();
    j["witness"] = r.witness;
    j["message"] = "There is no species tree for (T;t,σ)";
    return j;
  }
  const PlantedSpeciesTree& s = *r.species_tree;
  j["species_tree"] = serialize_species_tree(s, false);
  j["species_tree_planted"] = serialize_species_tree(s, true);
  j["species_vertices"] = species_vertices(s);
  j["map"] = map(g, s, r.map);
  j["violations"] = validation(r.validation);
  return j;
}

Json time_check(const GeneTree& g, const PlantedSpeciesTree& s, const TimeCheckResult& r) {
  Json j = header("timecheck");
  j["gene_tree"] = serialize_gene_tree(g);
  j["species_tree_planted"] = serialize_species_tree(s, true);
  j["species_vertices"] = species_vertices(s);
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["witness"] = {{"gene", r.witness.gene}, {"species", r.witness.species}};
    j["cycle"] = nullptr;
  } else {
    j["witness"] = nullptr;
    Json cyc = Json::array();
    for (const TimeStep& st : r.cycle) {
      auto node = [](const TimeNode& n) {
        return Json{{"tree", n.species ? "species" : "gene"}, {"vertex", n.id}};
      };
      cyc.push_back({{"from", node(st.from)},
                     {"to", node(st.to)},
                     {"relation", st.strict ? "<" : "="},
                     {"reason", st.reason}});
    }
    j["cycle"] = cyc;
  }
  return j;
}

}  // namespace gtrec::report
