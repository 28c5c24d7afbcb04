#include "smp/serialize.hpp"

#include <fstream>
#include <sstream>

#include "smp/error.hpp"

namespace smp {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& obj, const std::string& key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::uint64_t uint_field(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(where + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double double_field(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

TypeId type_by_name(const Universe& u, const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a type name");
  auto t = u.find_type(v.get<std::string>());
  if (!t) throw ParseError(where + ": unknown type '" + v.get<std::string>() + "'");
  return *t;
}

TypeId type_by_name(const Universe& u, const std::string& name, const std::string& where) {
  auto t = u.find_type(name);
  if (!t) throw ParseError(where + ": unknown type '" + name + "'");
  return *t;
}

ElementId element_by_name(const Universe& u, const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected an element name");
  auto e = u.find_element(v.get<std::string>());
  if (!e) throw ParseError(where + ": unknown element '" + v.get<std::string>() + "'");
  return *e;
}

json type_names(const Universe& u, const TypeSet& s) {
  json out = json::array();
  for (TypeId t : s) out.push_back(u.type_name(t));
  return out;
}

TypeSet parse_type_set(const Universe& u, const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of type names");
  std::vector<TypeId> items;
  for (const auto& x : v) items.push_back(type_by_name(u, x, where));
  return TypeSet(std::move(items));
}

json element_names(const Universe& u, std::span<const ElementId> seq) {
  json out = json::array();
  for (ElementId e : seq) out.push_back(u.element_name(e));
  return out;
}

std::vector<ElementId> parse_element_list(const Universe& u, const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of element names");
  std::vector<ElementId> out;
  for (const auto& x : v) out.push_back(element_by_name(u, x, where));
  return out;
}

json universe_to_json(const Universe& u, const TypeDistribution& dist) {
  json elements = json::array();
  for (ElementId e : u.elements()) {
    json types = json::array();
    for (TypeId t : u.types_of(e)) {
      json rec{{"name", u.type_name(t)}};
      if (dist.size() == u.type_count()) rec["p"] = number_to_json(dist.number(t));
      types.push_back(std::move(rec));
    }
    elements.push_back({{"name", u.element_name(e)}, {"types", std::move(types)}});
  }
  return {{"elements", std::move(elements)}};
}

std::pair<UniversePtr, TypeDistribution> universe_from_json(const json& j) {
  const json& elements = field(j, "elements", "universe");
  if (!elements.is_array()) throw ParseError("universe.elements: expected an array");
  Universe::Builder builder;
  std::vector<Number> probs;
  for (const auto& el : elements) {
    std::string name = string_field(el, "name", "universe.elements[]");
    const json& types = field(el, "types", "element '" + name + "'");
    if (!types.is_array()) throw ParseError("element '" + name + "': types must be an array");
    std::vector<std::string> names;
    for (const auto& t : types) {
      names.push_back(string_field(t, "name", "element '" + name + "' type"));
      probs.push_back(number_from_json(field(t, "p", "type '" + names.back() + "'"), "type '" + names.back() + "'.p"));
    }
    builder.add_element(std::move(name), std::move(names));
  }
  UniversePtr u = builder.build();
  TypeDistribution dist(*u, std::move(probs));
  return {u, std::move(dist)};
}

Family family_from_json(const json& j, const Universe& u);

Valuation valuation_from_json(const json& j, const Universe& u) {
  const std::string kind = string_field(j, "kind", "valuation");
  if (kind == "table") {
    std::map<TypeSet, Number> table;
    const json& entries = field(j, "entries", "valuation(table)");
    if (!entries.is_array()) throw ParseError("valuation(table).entries: expected an array");
    for (const auto& rec : entries) {
      table.emplace(parse_type_set(u, field(rec, "set", "table entry"), "table entry.set"),
                    number_from_json(field(rec, "value", "table entry"), "table entry.value"));
    }
    return table_valuation(std::move(table));
  }
  if (kind == "coverage") {
    std::map<TypeId, std::vector<std::uint32_t>> cover;
    const json& c = field(j, "cover", "valuation(coverage)");
    if (!c.is_object()) throw ParseError("valuation(coverage).cover: expected an object");
    for (const auto& [name, items] : c.items()) {
      if (!items.is_array()) throw ParseError("valuation(coverage).cover: expected integer arrays");
      std::vector<std::uint32_t> ids;
      for (const auto& x : items) ids.push_back(static_cast<std::uint32_t>(uint_field(x, "cover item")));
      cover.emplace(type_by_name(u, name, "valuation(coverage)"), std::move(ids));
    }
    return coverage_valuation(std::move(cover));
  }
  if (kind == "weighted_rank") {
    Family fam = family_from_json(field(j, "family", "valuation(weighted_rank)"), u);
    std::map<TypeId, Number> weights;
    const json& w = field(j, "weights", "valuation(weighted_rank)");
    if (!w.is_object()) throw ParseError("valuation(weighted_rank).weights: expected an object");
    for (const auto& [name, v] : w.items()) {
      weights.emplace(type_by_name(u, name, "weights"), number_from_json(v, "weights." + name));
    }
    return weighted_rank(std::move(fam), WeightMap(std::move(weights)));
  }
  if (kind == "partition_weighted") {
    std::map<TypeId, std::uint32_t> part_of;
    const json& p = field(j, "part_of", "valuation(partition_weighted)");
    if (!p.is_object()) throw ParseError("valuation(partition_weighted).part_of: expected an object");
    for (const auto& [name, v] : p.items()) {
      part_of.emplace(type_by_name(u, name, "part_of"), static_cast<std::uint32_t>(uint_field(v, "part_of." + name)));
    }
    std::vector<Number> part_weight;
    const json& pw = field(j, "part_weight", "valuation(partition_weighted)");
    if (!pw.is_array()) throw ParseError("valuation(partition_weighted).part_weight: expected an array");
    for (const auto& v : pw) part_weight.push_back(number_from_json(v, "part_weight[]"));
    return partition_weighted_valuation(std::move(part_of), std::move(part_weight));
  }
  if (kind == "contracted") {
    Valuation base = valuation_from_json(field(j, "base", "valuation(contracted)"), u);
    return contract(base, parse_type_set(u, field(j, "contracted", "valuation(contracted)"), "contracted"));
  }
  throw ParseError("unknown valuation kind '" + kind + "'");
}

Family family_from_json(const json& j, const Universe& u) {
  const std::string kind = string_field(j, "kind", "family");
  if (kind == "uniform_matroid") {
    return make_uniform_matroid(parse_type_set(u, field(j, "ground", "family(uniform_matroid)"), "ground"),
                                uint_field(field(j, "rank", "family(uniform_matroid)"), "rank"));
  }
  if (kind == "partition_matroid") {
    std::map<TypeId, std::uint32_t> part_of;
    const json& p = field(j, "part_of", "family(partition_matroid)");
    if (!p.is_object()) throw ParseError("family(partition_matroid).part_of: expected an object");
    for (const auto& [name, v] : p.items()) {
      part_of.emplace(type_by_name(u, name, "part_of"), static_cast<std::uint32_t>(uint_field(v, "part_of." + name)));
    }
    std::vector<std::uint32_t> capacity;
    const json& c = field(j, "capacity", "family(partition_matroid)");
    if (!c.is_array()) throw ParseError("family(partition_matroid).capacity: expected an array");
    for (const auto& v : c) capacity.push_back(static_cast<std::uint32_t>(uint_field(v, "capacity[]")));
    return make_partition_matroid(std::move(part_of), std::move(capacity));
  }
  if (kind == "intersection") {
    const json& m = field(j, "members", "family(intersection)");
    if (!m.is_array()) throw ParseError("family(intersection).members: expected an array");
    std::vector<Family> members;
    for (const auto& x : m) members.push_back(family_from_json(x, u));
    return intersect(std::move(members));
  }
  if (kind == "matching") {
    std::map<TypeId, MatchingFamily::Edge> edges;
    const json& e = field(j, "edges", "family(matching)");
    if (!e.is_object()) throw ParseError("family(matching).edges: expected an object");
    for (const auto& [name, v] : e.items()) {
      if (!v.is_array() || v.size() != 2) throw ParseError("family(matching).edges." + name + ": expected [u, v]");
      edges.emplace(type_by_name(u, name, "edges"),
                    MatchingFamily::Edge{static_cast<std::uint32_t>(uint_field(v[0], "edge endpoint")),
                                         static_cast<std::uint32_t>(uint_field(v[1], "edge endpoint"))});
    }
    return make_matching_family(std::move(edges));
  }
  if (kind == "chain") {
    std::map<TypeId, std::uint32_t> vertex_of;
    const json& vo = field(j, "vertex_of", "family(chain)");
    if (!vo.is_object()) throw ParseError("family(chain).vertex_of: expected an object");
    for (const auto& [name, v] : vo.items()) {
      vertex_of.emplace(type_by_name(u, name, "vertex_of"), static_cast<std::uint32_t>(uint_field(v, "vertex")));
    }
    std::vector<std::int64_t> parent;
    const json& p = field(j, "parent", "family(chain)");
    if (!p.is_array()) throw ParseError("family(chain).parent: expected an array");
    for (const auto& v : p) {
      if (!v.is_number_integer()) throw ParseError("family(chain).parent: expected integers");
      parent.push_back(v.get<std::int64_t>());
    }
    return make_chain_family(std::move(vertex_of), std::move(parent));
  }
  if (kind == "table") {
    TypeSet ground = parse_type_set(u, field(j, "ground", "family(table)"), "ground");
    const json& s = field(j, "sets", "family(table)");
    if (!s.is_array()) throw ParseError("family(table).sets: expected an array");
    std::vector<TypeSet> sets;
    for (const auto& x : s) sets.push_back(parse_type_set(u, x, "family(table).sets[]"));
    return make_table_family(std::move(ground), std::move(sets));
  }
  throw ParseError("unknown family kind '" + kind + "'");
}

Constraint constraint_from_json(const json& j, const Universe& u) {
  const std::string kind = string_field(j, "kind", "constraint");
  if (kind == "budget") {
    const json& c = field(j, "cost", "constraint(budget)");
    if (!c.is_array()) throw ParseError("constraint(budget).cost: expected an array");
    std::vector<double> cost;
    for (const auto& v : c) cost.push_back(double_field(v, "constraint(budget).cost[]"));
    return constraint_budget(std::move(cost), double_field(field(j, "budget", "constraint(budget)"), "budget"));
  }
  if (kind == "cardinality") {
    return constraint_cardinality(uint_field(field(j, "max_length", "constraint(cardinality)"), "max_length"));
  }
  if (kind == "dag_path") {
    std::vector<std::vector<ElementId>> arcs(u.element_count());
    const json& a = field(j, "arcs", "constraint(dag_path)");
    if (!a.is_object()) throw ParseError("constraint(dag_path).arcs: expected an object");
    for (const auto& [name, targets] : a.items()) {
      ElementId src = element_by_name(u, json(name), "arcs");
      arcs[src.value] = parse_element_list(u, targets, "arcs." + name);
    }
    return constraint_dag_path(std::move(arcs), element_by_name(u, field(j, "start", "constraint(dag_path)"), "start"));
  }
  if (kind == "tree_fan") {
    std::vector<std::optional<TreeFanConstraint::Edge>> edges(u.element_count());
    const json& e = field(j, "edges", "constraint(tree_fan)");
    if (!e.is_object()) throw ParseError("constraint(tree_fan).edges: expected an object");
    for (const auto& [name, v] : e.items()) {
      if (!v.is_array() || v.size() != 2) throw ParseError("constraint(tree_fan).edges." + name + ": expected [parent, child]");
      ElementId el = element_by_name(u, json(name), "edges");
      edges[el.value] = TreeFanConstraint::Edge{static_cast<std::uint32_t>(uint_field(v[0], "parent")),
                                                static_cast<std::uint32_t>(uint_field(v[1], "child"))};
    }
    return constraint_tree_fan(std::move(edges),
                               static_cast<std::uint32_t>(uint_field(field(j, "root", "constraint(tree_fan)"), "root")));
  }
  if (kind == "table") {
    const json& s = field(j, "sequences", "constraint(table)");
    if (!s.is_array()) throw ParseError("constraint(table).sequences: expected an array");
    std::vector<std::vector<ElementId>> seqs;
    for (const auto& x : s) seqs.push_back(parse_element_list(u, x, "constraint(table).sequences[]"));
    return constraint_table(std::move(seqs));
  }
  throw ParseError("unknown constraint kind '" + kind + "'");
}

void tree_node_to_json(const DecisionTree& tree, DecisionTree::NodeId n, json& out) {
  out = json::object();
  if (tree.is_leaf(n)) return;
  const Universe& u = tree.universe();
  const ElementId e = tree.element(n);
  out["element"] = u.element_name(e);
  json children = json::object();
  for (TypeId t : u.types_of(e)) tree_node_to_json(tree, tree.child(n, t), children[u.type_name(t)]);
  out["children"] = std::move(children);
}

void tree_node_from_json(DecisionTree& tree, DecisionTree::NodeId n, const json& j, const Universe& u) {
  if (!j.is_object()) throw ParseError("tree node: expected an object");
  if (j.empty()) return;
  const ElementId e = element_by_name(u, field(j, "element", "tree node"), "tree node.element");
  const json& children = field(j, "children", "tree node");
  if (!children.is_object() || children.size() != u.type_count(e)) {
    throw ParseError("tree node '" + u.element_name(e) + "': children must list every type once");
  }
  tree.expand(n, e);
  for (TypeId t : u.types_of(e)) {
    auto it = children.find(u.type_name(t));
    if (it == children.end()) throw ParseError("tree node: missing child for type '" + u.type_name(t) + "'");
    tree_node_from_json(tree, tree.child(n, t), *it, u);
  }
}

json rule_to_json(const ProbeStrategy& rule) {
  if (const auto* c = dynamic_cast<const ColumnStrategy*>(&rule)) {
    return {{"kind", "column_rule"}, {"depth", c->depth()}};
  }
  if (const auto* t = dynamic_cast<const TreeLevelStrategy*>(&rule)) {
    return {{"kind", "tree_level_rule"}, {"depth", t->tree().depth()}, {"arity", t->tree().arity()}};
  }
  throw ValidationError("serialize: unsupported strategy rule");
}

std::shared_ptr<const ProbeStrategy> rule_from_json(const json& j, const UniversePtr& u) {
  const std::string kind = string_field(j, "kind", "strategy");
  if (kind == "column_rule") {
    return std::make_shared<ColumnStrategy>(u, static_cast<int>(uint_field(field(j, "depth", "strategy"), "depth")));
  }
  if (kind == "tree_level_rule") {
    PerfectTree pt(static_cast<std::uint32_t>(uint_field(field(j, "depth", "strategy"), "depth")),
                   static_cast<std::uint32_t>(uint_field(field(j, "arity", "strategy"), "arity")));
    return std::make_shared<TreeLevelStrategy>(u, pt);
  }
  throw ParseError("unknown strategy kind '" + kind + "'");
}

}  // namespace

json number_to_json(const Number& n) {
  if (n.is_exact()) return n.to_string();
  return n.value();
}

Number number_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Number::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Number(Rational(j.get<std::int64_t>()));
  if (j.is_number()) return Number(j.get<double>());
  throw ParseError(where + ": expected a number or a rational string");
}

json valuation_to_json(const ValuationFunction& f, const Universe& u) {
  json out{{"kind", to_string(f.kind())}};
  if (const auto* t = dynamic_cast<const TableValuation*>(&f)) {
    json entries = json::array();
    for (const auto& [set, value] : t->table()) {
      entries.push_back({{"set", type_names(u, set)}, {"value", number_to_json(value)}});
    }
    out["entries"] = std::move(entries);
  } else if (const auto* c = dynamic_cast<const CoverageValuation*>(&f)) {
    json cover = json::object();
    for (const auto& [t, items] : c->cover_sets()) cover[u.type_name(t)] = items;
    out["cover"] = std::move(cover);
  } else if (const auto* w = dynamic_cast<const WeightedRankValuation*>(&f)) {
    out["family"] = family_to_json(*w->family(), u);
    json weights = json::object();
    for (const auto& [t, n] : w->weights().entries()) weights[u.type_name(t)] = number_to_json(n);
    out["weights"] = std::move(weights);
  } else if (const auto* p = dynamic_cast<const PartitionWeightedValuation*>(&f)) {
    json part_of = json::object();
    for (const auto& [t, part] : p->part_of()) part_of[u.type_name(t)] = part;
    json weights = json::array();
    for (const auto& n : p->part_weight()) weights.push_back(number_to_json(n));
    out["part_of"] = std::move(part_of);
    out["part_weight"] = std::move(weights);
  } else if (const auto* k = dynamic_cast<const ContractedValuation*>(&f)) {
    out["base"] = valuation_to_json(*k->base(), u);
    out["contracted"] = type_names(u, k->contracted());
  } else {
    throw ValidationError("serialize: unsupported valuation");
  }
  return out;
}

json family_to_json(const IndependenceOracle& family, const Universe& u) {
  json out{{"kind", to_string(family.kind())}};
  if (const auto* m = dynamic_cast<const UniformMatroid*>(&family)) {
    out["ground"] = type_names(u, m->ground());
    out["rank"] = m->rank();
  } else if (const auto* p = dynamic_cast<const PartitionMatroid*>(&family)) {
    json part_of = json::object();
    for (const auto& [t, part] : p->part_of()) part_of[u.type_name(t)] = part;
    out["part_of"] = std::move(part_of);
    out["capacity"] = p->capacity();
  } else if (const auto* i = dynamic_cast<const IntersectionFamily*>(&family)) {
    json members = json::array();
    for (const auto& m : i->members()) members.push_back(family_to_json(*m, u));
    out["members"] = std::move(members);
  } else if (const auto* g = dynamic_cast<const MatchingFamily*>(&family)) {
    json edges = json::object();
    for (const auto& [t, e] : g->edges()) edges[u.type_name(t)] = {e.first, e.second};
    out["edges"] = std::move(edges);
  } else if (const auto* c = dynamic_cast<const ChainFamily*>(&family)) {
    json vertex_of = json::object();
    for (const auto& [t, v] : c->vertex_of()) vertex_of[u.type_name(t)] = v;
    out["vertex_of"] = std::move(vertex_of);
    out["parent"] = c->parent();
  } else if (const auto* t = dynamic_cast<const TableFamily*>(&family)) {
    out["ground"] = type_names(u, t->ground());
    json sets = json::array();
    for (const auto& s : t->sets()) sets.push_back(type_names(u, s));
    out["sets"] = std::move(sets);
  } else {
    throw ValidationError("serialize: unsupported family");
  }
  return out;
}

json constraint_to_json(const ConstraintOracle& constraint, const Universe& u) {
  json out{{"kind", to_string(constraint.kind())}};
  if (const auto* b = dynamic_cast<const BudgetConstraint*>(&constraint)) {
    out["cost"] = b->cost();
    out["budget"] = b->budget();
  } else if (const auto* c = dynamic_cast<const CardinalityConstraint*>(&constraint)) {
    out["max_length"] = c->max_length();
  } else if (const auto* d = dynamic_cast<const DagPathConstraint*>(&constraint)) {
    json arcs = json::object();
    for (std::size_t i = 0; i < d->arcs().size(); ++i) {
      if (!d->arcs()[i].empty()) arcs[u.element_name(ElementId{static_cast<std::uint32_t>(i)})] = element_names(u, d->arcs()[i]);
    }
    out["arcs"] = std::move(arcs);
    out["start"] = u.element_name(d->start());
  } else if (const auto* f = dynamic_cast<const TreeFanConstraint*>(&constraint)) {
    json edges = json::object();
    for (std::size_t i = 0; i < f->edges().size(); ++i) {
      if (const auto& e = f->edges()[i]) {
        edges[u.element_name(ElementId{static_cast<std::uint32_t>(i)})] = {e->parent, e->child};
      }
    }
    out["edges"] = std::move(edges);
    out["root"] = f->root();
  } else if (const auto* t = dynamic_cast<const TableConstraint*>(&constraint)) {
    json seqs = json::array();
    for (const auto& s : t->sequences()) seqs.push_back(element_names(u, s));
    out["sequences"] = std::move(seqs);
  } else {
    throw ValidationError("serialize: unsupported constraint");
  }
  return out;
}

json tree_to_json(const DecisionTree& tree) {
  json out;
  tree_node_to_json(tree, tree.root(), out);
  return out;
}

json instance_to_json(const InstanceBundle& b) {
  if (!b.universe) throw ValidationError("serialize: bundle without a universe");
  const Universe& u = *b.universe;
  json doc;
  doc["schema"] = kInstanceSchema;
  doc["version"] = kInstanceVersion;
  doc["metadata"] = {{"construction", b.construction}, {"parameters", b.parameters}};
  doc["universe"] = universe_to_json(u, b.dist);
  doc["valuation"] = b.valuation ? valuation_to_json(*b.valuation, u) : json(nullptr);
  doc["family"] = b.family ? family_to_json(*b.family, u) : json(nullptr);
  doc["constraint"] = b.constraint ? constraint_to_json(*b.constraint, u) : json(nullptr);
  doc["tree"] = b.tree ? tree_to_json(*b.tree) : json(nullptr);
  doc["strategy"] = b.rule ? rule_to_json(*b.rule) : json(nullptr);
  return doc;
}

InstanceBundle instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance: expected a JSON object");
  const std::string schema = string_field(doc, "schema", "instance");
  if (schema != kInstanceSchema) throw ParseError("instance: unknown schema '" + schema + "'");
  const json& version = field(doc, "version", "instance");
  if (!version.is_number_integer() || version.get<int>() != kInstanceVersion) {
    throw ParseError("instance: unsupported version " + version.dump());
  }
  try {
    InstanceBundle b;
    if (auto it = doc.find("metadata"); it != doc.end() && !it->is_null()) {
      b.construction = string_field(*it, "construction", "metadata");
      if (auto p = it->find("parameters"); p != it->end()) {
        if (!p->is_object()) throw ParseError("metadata.parameters: expected an object");
        for (const auto& [k, v] : p->items()) {
          if (!v.is_string()) throw ParseError("metadata.parameters." + k + ": expected a string");
          b.parameters[k] = v.get<std::string>();
        }
      }
    }
    auto [universe, dist] = universe_from_json(field(doc, "universe", "instance"));
    b.universe = universe;
    b.dist = std::move(dist);
    const Universe& u = *universe;
    auto optional = [&](const char* key) -> const json* {
      auto it = doc.find(key);
      return (it == doc.end() || it->is_null()) ? nullptr : &*it;
    };
    if (const json* v = optional("valuation")) b.valuation = valuation_from_json(*v, u);
    if (const json* f = optional("family")) b.family = family_from_json(*f, u);
    if (const json* c = optional("constraint")) b.constraint = constraint_from_json(*c, u);
    if (const json* t = optional("tree")) {
      DecisionTree tree(universe);
      tree_node_from_json(tree, tree.root(), *t, u);
      b.tree = std::move(tree);
    }
    if (const json* s = optional("strategy")) b.rule = rule_from_json(*s, universe);
    return b;
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string("instance: invalid content: ") + e.what());
  }
}

std::string serialize_instance(const InstanceBundle& bundle) { return instance_to_json(bundle).dump(2) + "\n"; }

InstanceBundle parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance: malformed JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

InstanceBundle load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("instance: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const InstanceBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_instance(bundle);
}

}  // namespace smp
