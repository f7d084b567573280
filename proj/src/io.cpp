#include "ruleinfer/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ruleinfer {

namespace {

template <class T>
T get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw FormatError(std::string("bad field \"") + key + "\": " + e.what());
    }
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

} // namespace

Json poset_to_json(const LabelPoset& poset) {
    const auto& names = poset.names();
    Json covers = Json::array();
    for (const auto& [a, b] : poset.covers()) covers.push_back({a, b});
    return Json{{"bottom", names[0]},
                {"top", names[1]},
                {"atoms", std::vector<std::string>(names.begin() + 2, names.end())},
                {"covers", covers}};
}

LabelPoset poset_from_json(const Json& j) {
    const auto bottom = j.contains("bottom") ? get<std::string>(j, "bottom") : std::string(LabelPoset::default_bottom);
    const auto top = j.contains("top") ? get<std::string>(j, "top") : std::string(LabelPoset::default_top);
    const auto atoms = get<std::vector<std::string>>(j, "atoms");
    std::vector<std::pair<std::string, std::string>> covers;
    if (j.contains("covers")) {
        for (const Json& c : j.at("covers")) {
            if (!c.is_array() || c.size() != 2) throw FormatError("a cover must be a pair [a, b]");
            covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
        }
    }
    try {
        return covers.empty() ? LabelPoset::flat(atoms, bottom, top) : LabelPoset::with_covers(atoms, covers, bottom, top);
    } catch (const LabelError& e) {
        throw FormatError(std::string("poset: ") + e.what());
    }
}

Json graph_to_json(const Graph& g, const LabelPoset& poset) {
    Json vs = Json::array(), es = Json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) vs.push_back({{"id", v}, {"label", poset.name(g.label(v))}});
    for (const Edge& e : g.edges()) {
        es.push_back({{"source", e.source}, {"target", e.target}, {"label", poset.name(e.label)}, {"directed", e.directed}});
    }
    return Json{{"vertices", vs}, {"edges", es}};
}

Graph graph_from_json(const Json& j, const LabelPoset& poset) {
    Graph g;
    std::map<std::int64_t, VertexId> ids;
    try {
        for (const Json& v : j.at("vertices")) {
            const auto id = get<std::int64_t>(v, "id");
            if (!ids.emplace(id, g.add_vertex(poset.label(get<std::string>(v, "label")))).second) {
                throw FormatError("duplicate vertex id " + std::to_string(id));
            }
        }
        if (j.contains("edges")) {
            for (const Json& e : j.at("edges")) {
                const auto s = ids.find(get<std::int64_t>(e, "source"));
                const auto t = ids.find(get<std::int64_t>(e, "target"));
                if (s == ids.end() || t == ids.end()) throw FormatError("edge endpoint is not a vertex");
                const bool directed = e.contains("directed") && get<bool>(e, "directed");
                g.add_edge(s->second, t->second, poset.label(get<std::string>(e, "label")), directed);
            }
        }
    } catch (const LabelError& e) {
        throw FormatError(std::string("graph: ") + e.what());
    } catch (const GraphError& e) {
        throw FormatError(std::string("graph: ") + e.what());
    } catch (const Json::exception& e) {
        throw FormatError(std::string("graph: ") + e.what());
    }
    return g;
}

Json map_to_json(const GraphMap& f) {
    Json vm = Json::array(), em = Json::array();
    for (std::size_t v = 0; v < f.vertices.size(); ++v)
        if (f.vertices[v] != unmapped) vm.push_back({v, f.vertices[v]});
    for (std::size_t e = 0; e < f.edges.size(); ++e)
        if (f.edges[e] != unmapped) em.push_back({e, f.edges[e]});
    return Json{{"vertex_map", vm}, {"edge_map", em}};
}

GraphMap map_from_json(const Json& j, const Graph& source) {
    GraphMap f = GraphMap::empty_for(source);
    auto fill = [&](const char* key, std::vector<std::uint32_t>& out) {
        if (!j.contains(key)) return;
        for (const Json& p : j.at(key)) {
            if (!p.is_array() || p.size() != 2) throw FormatError(std::string(key) + " entries must be pairs");
            const auto from = p[0].get<std::size_t>();
            if (from >= out.size()) throw FormatError(std::string(key) + " refers to a missing element");
            if (out[from] != unmapped) throw FormatError(std::string(key) + " maps an element twice");
            out[from] = p[1].get<std::uint32_t>();
        }
    };
    fill("vertex_map", f.vertices);
    fill("edge_map", f.edges);
    return f;
}

Json rule_to_json(const Rule& p, const LabelPoset& poset) {
    return Json{{"left", graph_to_json(p.left, poset)},
                {"context", graph_to_json(p.context, poset)},
                {"right", graph_to_json(p.right, poset)},
                {"l", map_to_json(p.l)},
                {"r", map_to_json(p.r)}};
}

Rule rule_from_json(const Json& j, const LabelPoset& poset) {
    Rule p;
    p.left = graph_from_json(get<Json>(j, "left"), poset);
    p.context = graph_from_json(get<Json>(j, "context"), poset);
    p.right = graph_from_json(get<Json>(j, "right"), poset);
    p.l = map_from_json(get<Json>(j, "l"), p.context);
    p.r = map_from_json(get<Json>(j, "r"), p.context);
    try {
        validate_rule(p, poset);
    } catch (const RuleError& e) {
        throw FormatError(std::string("rule: ") + e.what());
    }
    return p;
}

Json system_to_json(const TransitionSystem& system) {
    const LabelPoset& P = system.poset();
    Json inputs = Json::array(), ts = Json::array();
    for (const Graph& g : system.inputs()) inputs.push_back(graph_to_json(g, P));
    for (const SystemTransition& t : system.transitions()) {
        Json m = map_to_json(t.map);
        Json o{{"source", t.source}, {"target", graph_to_json(t.target, P)}, {"vertex_map", m["vertex_map"]},
               {"edge_map", m["edge_map"]}};
        if (!t.name.empty()) o["name"] = t.name;
        ts.push_back(o);
    }
    return Json{{"poset", poset_to_json(P)}, {"inputs", inputs}, {"transitions", ts}};
}

TransitionSystem system_from_json(const Json& j) {
    TransitionSystem sys(poset_from_json(get<Json>(j, "poset")));
    for (const Json& g : get<Json>(j, "inputs")) sys.add_input(graph_from_json(g, sys.poset()));
    std::size_t k = 0;
    for (const Json& t : get<Json>(j, "transitions")) {
        const auto src = get<std::size_t>(t, "source");
        if (src >= sys.inputs().size()) throw FormatError("transition " + std::to_string(k) + ": no such input");
        Graph target = graph_from_json(get<Json>(t, "target"), sys.poset());
        GraphMap f = map_from_json(t, sys.inputs()[src]);
        const std::string name = t.contains("name") ? get<std::string>(t, "name") : std::string{};
        try {
            sys.add_transition(src, std::move(f), std::move(target), name);
        } catch (const std::exception& e) {
            throw FormatError("transition " + std::to_string(k) + ": " + e.what());
        }
        ++k;
    }
    return sys;
}

std::string rule_to_gml(const Rule& p, const LabelPoset& poset, const std::string& id) {
    // Node ids: context vertices first, then deleted, then created ones.
    std::vector<std::size_t> left_id(p.left.vertex_count(), SIZE_MAX), right_id(p.right.vertex_count(), SIZE_MAX);
    std::size_t next = 0;
    for (VertexId k = 0; k < p.context.vertex_count(); ++k) {
        left_id[p.l.vertices[k]] = next;
        right_id[p.r.vertices[k]] = next++;
    }
    for (auto& v : left_id)
        if (v == SIZE_MAX) v = next++;
    for (auto& v : right_id)
        if (v == SIZE_MAX) v = next++;

    std::ostringstream left, context, right;
    auto node = [&](std::ostringstream& os, std::size_t v, Label l) {
        os << "\t\tnode [ id " << v << " label " << quote(poset.name(l)) << " ]\n";
    };
    auto edge = [&](std::ostringstream& os, std::size_t s, std::size_t t, Label l, bool directed) {
        os << "\t\tedge [ source " << s << " target " << t << " label " << quote(poset.name(l));
        if (directed) os << " directed 1";
        os << " ]\n";
    };
    for (VertexId k = 0; k < p.context.vertex_count(); ++k) {
        const Label a = p.left.label(p.l.vertices[k]), b = p.right.label(p.r.vertices[k]);
        if (a == b) {
            node(context, left_id[p.l.vertices[k]], a);
        } else {
            node(left, left_id[p.l.vertices[k]], a);
            node(right, left_id[p.l.vertices[k]], b);
        }
    }
    std::vector<char> left_kept(p.left.vertex_count(), 0), right_kept(p.right.vertex_count(), 0);
    for (VertexId k = 0; k < p.context.vertex_count(); ++k) {
        left_kept[p.l.vertices[k]] = 1;
        right_kept[p.r.vertices[k]] = 1;
    }
    for (VertexId v = 0; v < p.left.vertex_count(); ++v)
        if (!left_kept[v]) node(left, left_id[v], p.left.label(v));
    for (VertexId v = 0; v < p.right.vertex_count(); ++v)
        if (!right_kept[v]) node(right, right_id[v], p.right.label(v));

    std::vector<char> le(p.left.edge_count(), 0), re(p.right.edge_count(), 0);
    for (EdgeId k = 0; k < p.context.edge_count(); ++k) {
        const EdgeId a = p.l.edges[k], b = p.r.edges[k];
        le[a] = re[b] = 1;
        const Edge& ea = p.left.edge(a);
        const Edge& eb = p.right.edge(b);
        if (ea.label == eb.label) {
            edge(context, left_id[ea.source], left_id[ea.target], ea.label, ea.directed);
        } else {
            edge(left, left_id[ea.source], left_id[ea.target], ea.label, ea.directed);
            edge(right, right_id[eb.source], right_id[eb.target], eb.label, eb.directed);
        }
    }
    for (EdgeId e = 0; e < p.left.edge_count(); ++e) {
        if (le[e]) continue;
        const Edge& x = p.left.edge(e);
        edge(left, left_id[x.source], left_id[x.target], x.label, x.directed);
    }
    for (EdgeId e = 0; e < p.right.edge_count(); ++e) {
        if (re[e]) continue;
        const Edge& x = p.right.edge(e);
        edge(right, right_id[x.source], right_id[x.target], x.label, x.directed);
    }
    std::ostringstream os;
    os << "rule [\n";
    if (!id.empty()) os << "\truleID " << quote(id) << "\n";
    os << "\tleft [\n" << left.str() << "\t]\n";
    os << "\tcontext [\n" << context.str() << "\t]\n";
    os << "\tright [\n" << right.str() << "\t]\n";
    os << "]\n";
    return os.str();
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

} // namespace ruleinfer
