#include "hemilab/json_io.hpp"

#include <cstdlib>
#include <fstream>

namespace hemilab {

OrderedJson complex_to_json(const SimplicialComplex& x)
{
    OrderedJson j;
    j["typeset"] = x.typeset();
    j["vertices"] = OrderedJson::array();
    for (const auto& vi : x.vertex_infos()) {
        OrderedJson v;
        v["id"] = vi.id;
        v["vtype"] = vi.vtype;
        v["label"] = vi.label;
        j["vertices"].push_back(v);
    }
    j["facets"] = OrderedJson::array();
    for (const auto& f : x.facets()) j["facets"].push_back(f.vertices());
    return j;
}

SimplicialComplex complex_from_json(const Json& j)
{
    std::vector<VertexInfo> verts;
    for (const auto& v : j.at("vertices"))
        verts.push_back({v.at("id").get<int>(), v.at("vtype").get<int>(),
                         v.value("label", std::string())});
    std::vector<Simplex> facets;
    for (const auto& f : j.at("facets")) facets.push_back(Simplex(f.get<std::vector<int>>()));
    return SimplicialComplex(std::move(verts), std::move(facets));
}

OrderedJson coxeter_to_json(const CoxeterComplex& cx)
{
    OrderedJson j = complex_to_json(cx.complex());
    j["realization"] = OrderedJson::array();
    for (int v = 0; v < cx.num_vertices(); ++v) j["realization"].push_back(cx.coords(v));
    return j;
}

namespace {

Building building_from_spec_impl(const Json& spec)
{
    if (spec.contains("join")) {
        std::vector<Building> parts;
        for (const auto& sub : spec.at("join")) parts.push_back(building_from_spec_impl(sub));
        return Building::join(std::move(parts));
    }
    if (spec.contains("thin")) {
        const auto& t = spec.at("thin");
        if (t.value("family", "A") != "A") throw InputError("only family A is supported");
        return Building::thin(t.at("n").get<int>());
    }
    if (spec.value("family", "A") != "A") throw InputError("only family A is supported");
    return Building::flag(spec.at("n").get<int>(), spec.at("q").get<int>());
}

}  // namespace

Building building_from_spec(const Json& spec)
{
    return building_from_spec_impl(spec);
}

std::string spec_cache_key(const Json& spec)
{
    return fnv1a_hex(spec.dump());
}

Pole pole_from_spec(const Building& b, const Json& spec)
{
    if (spec.contains("vertex")) return Pole::at_vertex(b, spec.at("vertex").get<int>());
    if (spec.contains("barycenter"))
        return Pole::at_barycenter(b, Simplex(spec.at("barycenter").get<std::vector<int>>()));

    // frame + carrier + weights, for a single thick factor
    if (b.num_factors() != 1 || !b.factor(0).thick_model())
        throw InputError("frame pole specs require a single flag factor");
    const auto& fac = b.factor(0);
    int np1 = fac.rank() + 1;

    std::vector<int> lines;
    for (const auto& row : spec.at("frame")) {
        Subspace line = row_space(fac.field_order(), np1, {row.get<std::vector<int>>()});
        int resolved = fac.find_subspace(line);
        if (resolved == -1) throw InputError("pole frame line not found");
        lines.push_back(resolved);
    }
    auto chart = b.make_chart({fac.chart_from_frame(lines)});

    std::vector<std::pair<VertexId, Rat>> entries;
    const auto& carriers = spec.at("carrier");
    const auto& weights = spec.at("weights");
    if (carriers.size() != weights.size())
        throw InputError("pole spec: carrier/weights length mismatch");
    for (std::size_t i = 0; i < carriers.size(); ++i) {
        unsigned mask = 0;
        for (int pos : carriers[i].get<std::vector<int>>()) {
            if (pos < 1 || pos > np1) throw InputError("pole spec: carrier position out of range");
            mask |= 1u << (pos - 1);
        }
        int cox_vid = b.model().vertex_id(0, mask);
        VertexId gv = chart.cox_to_bld[static_cast<std::size_t>(cox_vid)];
        Rat w = weights[i].is_string() ? parse_rational(weights[i].get<std::string>())
                                       : Rat(weights[i].get<long long>());
        entries.emplace_back(gv, w);
    }
    std::sort(entries.begin(), entries.end());
    std::vector<VertexId> carrier;
    std::vector<Rat> ws;
    for (auto& [gv, w] : entries) {
        carrier.push_back(gv);
        ws.push_back(w);
    }
    return Pole::with_chart(b, std::move(chart), Simplex(std::move(carrier)), std::move(ws));
}

OrderedJson pole_to_json(const Pole& x)
{
    OrderedJson j;
    j["carrier"] = x.carrier_bld.vertices();
    j["weights"] = OrderedJson::array();
    for (const auto& w : x.weights) j["weights"].push_back(rational_to_string(w));
    return j;
}

Pole pole_from_cli(const Building& b, const std::string& arg)
{
    if (arg.rfind("vertex:", 0) == 0) {
        return Pole::at_vertex(b, std::stoi(arg.substr(7)));
    }
    if (arg.rfind("barycenter:", 0) == 0) {
        std::vector<int> ids;
        std::string rest = arg.substr(11);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            ids.push_back(std::stoi(rest.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return Pole::at_barycenter(b, Simplex(std::move(ids)));
    }
    return pole_from_spec(b, load_json_file(arg));
}

OrderedJson classification_to_json(const Building& b, const VertexClassification& cls)
{
    OrderedJson j;
    j["classes"] = OrderedJson::object();
    j["classes"]["LT"] = cls.of_class(Tri::LT);
    j["classes"]["EQ"] = cls.of_class(Tri::EQ);
    j["classes"]["GT"] = cls.of_class(Tri::GT);
    std::vector<VertexId> anti;
    for (VertexId v : b.complex().vertex_ids())
        if (cls.is_antipodal(v)) anti.push_back(v);
    j["antipodal"] = anti;
    return j;
}

OrderedJson homology_to_json(const HomologyProfile& hp)
{
    OrderedJson j;
    j["top_dim"] = hp.top_dim;
    OrderedJson betti = OrderedJson::object();
    OrderedJson torsion = OrderedJson::object();
    for (int k = -1; k <= hp.top_dim; ++k) {
        betti[std::to_string(k)] = hp.betti_of(k);
        OrderedJson t = OrderedJson::array();
        for (const auto& d : hp.torsion_of(k)) t.push_back(d.str());
        torsion[std::to_string(k)] = t;
    }
    j["betti"] = betti;
    j["torsion"] = torsion;
    return j;
}

std::filesystem::path cache_directory(const std::string& override_dir)
{
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("HEMILAB_CACHE")) return env;
    return ".cache";
}

std::filesystem::path write_cached_complex(const Json& spec, const Building& b,
                                           const std::string& cache_override)
{
    auto dir = cache_directory(cache_override);
    std::filesystem::create_directories(dir);
    auto path = dir / (spec_cache_key(spec) + ".complex.json");
    if (!std::filesystem::exists(path)) {
        OrderedJson j = complex_to_json(b.complex());
        bool all_thin = true;
        for (int f = 0; f < b.num_factors(); ++f)
            if (b.factor(f).thick_model()) all_thin = false;
        if (all_thin) {
            // thin buildings coincide with their model; vertex ids align
            j["realization"] = OrderedJson::array();
            for (int v = 0; v < b.model().num_vertices(); ++v)
                j["realization"].push_back(b.model().coords(v));
        }
        j["spec"] = OrderedJson::parse(spec.dump());
        write_text_file(path.string(), j.dump(2) + "\n");
    }
    return path;
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

}  // namespace hemilab
