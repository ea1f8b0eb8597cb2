// Command-line front end: generation, classification, filtration, homology,
// verification, and DOT export, with content-addressed caching.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "hemilab/filtration.hpp"
#include "hemilab/json_io.hpp"
#include "hemilab/verify.hpp"

using namespace hemilab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSizeBound = 3;

void emit(const std::string& out_path, const std::string& content)
{
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

OrderedJson filtration_report(const Building& b, const Filtration& filt)
{
    OrderedJson rep;
    rep["schema"] = kSchemaTag;
    rep["dim"] = b.complex().dim();
    rep["num_stages"] = filt.num_stages();
    rep["max_height"] = filt.max_height();
    rep["open_f_vector"] = filt.open_hemisphere().f_vector();
    rep["closed_f_vector"] = filt.closed_hemisphere().f_vector();
    rep["equator_f_vector"] = filt.equator().f_vector();
    rep["stages"] = OrderedJson::array();
    for (int k = 0; k <= filt.num_stages(); ++k) {
        OrderedJson st;
        st["k"] = k;
        st["simplices"] = static_cast<long long>(filt.stage(k).count_simplices());
        st["f_vector"] = filt.stage(k).f_vector();
        OrderedJson image = OrderedJson::array();
        for (const auto& sigma : filt.image_at_height(k)) {
            OrderedJson entry;
            entry["sigma"] = sigma.vertices();
            entry["relative_star_size"] = static_cast<long long>(filt.relative_star(sigma).size());
            if (!sigma.empty()) entry["relative_link_f_vector"] = filt.relative_link(sigma).f_vector();
            image.push_back(entry);
        }
        st["image_simplices"] = image;
        rep["stages"].push_back(st);
    }
    // verification verdicts carried with the report
    bool stages_ok =
        filt.stage(0) == SimplicialComplex::join(filt.open_hemisphere(), filt.split().hor) &&
        filt.stage(filt.num_stages()) == filt.closed_hemisphere();
    bool links_ok = true;
    for (const auto& sigma : filt.image())
        if (!sigma.empty() && !(filt.relative_link(sigma) == filt.relative_link_predicted(sigma)))
            links_ok = false;
    rep["verdicts"] = OrderedJson{{"stage_endpoints", stages_ok}, {"relative_links", links_ok}};
    return rep;
}

std::string dot_export(const Building& b, const VertexClassification* cls)
{
    std::ostringstream os;
    os << "graph skeleton {\n";
    for (VertexId v : b.complex().vertex_ids()) {
        os << "  v" << v << " [label=\"" << b.complex().label(v);
        if (cls) os << " " << to_string(cls->of(v));
        os << "\"";
        if (cls) {
            const char* color = cls->of(v) == Tri::LT   ? "lightblue"
                                : cls->of(v) == Tri::EQ ? "gray"
                                                        : "salmon";
            os << ", style=filled, fillcolor=" << color;
        }
        os << "];\n";
    }
    for (const auto& s : b.complex().all_simplices())
        if (s.dim() == 1)
            os << "  v" << s.vertices()[0] << " -- v" << s.vertices()[1] << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hemilab: spherical buildings, hemisphere complexes, and exact homology"};
    app.require_subcommand(1);

    std::string spec_path, pole_arg, out_path, cache_dir, complex_path, job_path, in_path;
    std::vector<std::string> checks;
    std::uint64_t seed = 1;
    int jobs = 0;  // 0 = available parallelism
    std::size_t max_cells = 200000;
    std::string poles_mode = "all";

    auto* gen = app.add_subcommand("generate", "build a building and cache its complex");
    gen->add_option("--spec", spec_path, "building spec file")->required();
    gen->add_option("--cache", cache_dir, "cache directory (default HEMILAB_CACHE or ./.cache)");

    auto* cls_cmd = app.add_subcommand("classify", "classify vertices against a pole");
    cls_cmd->add_option("--spec", spec_path)->required();
    cls_cmd->add_option("--pole", pole_arg, "vertex:ID | barycenter:IDs | pole file")->required();
    cls_cmd->add_option("--out", out_path);

    auto* filt_cmd = app.add_subcommand("filtrate", "height filtration of a closed hemisphere");
    filt_cmd->add_option("--spec", spec_path)->required();
    filt_cmd->add_option("--pole", pole_arg)->required();
    filt_cmd->add_option("--out", out_path);
    filt_cmd->add_option("--max-cells", max_cells);

    auto* hom_cmd = app.add_subcommand("homology", "reduced integer homology");
    hom_cmd->add_option("--spec", spec_path, "building spec (whole complex)");
    hom_cmd->add_option("--complex", complex_path, "complex file");
    hom_cmd->add_option("--out", out_path);
    hom_cmd->add_option("--max-cells", max_cells);

    auto* ver_cmd = app.add_subcommand("verify", "run verification jobs");
    ver_cmd->add_option("--job", job_path, "job file (overrides other options)");
    ver_cmd->add_option("--spec", spec_path);
    ver_cmd->add_option("--pole", pole_arg, "single pole (default: all)");
    ver_cmd->add_option("--poles", poles_mode, "all | representative");
    ver_cmd->add_option("--checks", checks)->delimiter(',');
    ver_cmd->add_option("--seed", seed);
    ver_cmd->add_option("--jobs", jobs);
    ver_cmd->add_option("--max-cells", max_cells);
    ver_cmd->add_option("--out", out_path);

    auto* dot_cmd = app.add_subcommand("export-dot", "1-skeleton with vertex classes");
    dot_cmd->add_option("--spec", spec_path)->required();
    dot_cmd->add_option("--pole", pole_arg);
    dot_cmd->add_option("--out", out_path);

    auto* rep_cmd = app.add_subcommand("report", "summarize a verdict report");
    rep_cmd->add_option("--in", in_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitUsage;
    }

    try {
        if (*gen) {
            Json spec = load_json_file(spec_path);
            Building b = building_from_spec(spec);
            auto path = write_cached_complex(spec, b, cache_dir);
            std::cout << "cached " << path.string() << " (" << b.complex().facets().size()
                      << " facets)\n";
            return kExitPass;
        }
        if (*cls_cmd) {
            Json spec = load_json_file(spec_path);
            Building b = building_from_spec(spec);
            Pole x = pole_from_cli(b, pole_arg);
            auto cls = classify(b, x);
            OrderedJson j;
            j["schema"] = kSchemaTag;
            j["building"] = OrderedJson::parse(spec.dump());
            j["pole"] = pole_to_json(x);
            j["classification"] = classification_to_json(b, cls);
            emit(out_path, j.dump(2) + "\n");
            return kExitPass;
        }
        if (*filt_cmd) {
            Json spec = load_json_file(spec_path);
            Building b = building_from_spec(spec);
            Pole x = pole_from_cli(b, pole_arg);
            Filtration filt(b, x, max_cells);
            OrderedJson j = filtration_report(b, filt);
            j["pole"] = pole_to_json(x);
            emit(out_path, j.dump(2) + "\n");
            return kExitPass;
        }
        if (*hom_cmd) {
            SimplicialComplex x;
            if (!complex_path.empty()) {
                x = complex_from_json(load_json_file(complex_path));
            } else if (!spec_path.empty()) {
                x = building_from_spec(load_json_file(spec_path)).complex();
            } else {
                std::cerr << "homology: need --spec or --complex\n";
                return kExitUsage;
            }
            auto hp = reduced_homology(x, max_cells);
            OrderedJson j;
            j["schema"] = kSchemaTag;
            j["f_vector"] = x.f_vector();
            j["homology"] = homology_to_json(hp);
            emit(out_path, j.dump(2) + "\n");
            return kExitPass;
        }
        if (*ver_cmd) {
            VerificationJob job;
            if (!job_path.empty()) {
                job = VerificationJob::from_json(load_json_file(job_path));
            } else {
                if (spec_path.empty()) {
                    std::cerr << "verify: need --job or --spec\n";
                    return kExitUsage;
                }
                job.building_spec = load_json_file(spec_path);
                if (!pole_arg.empty()) {
                    job.poles = "explicit";
                    Building b = building_from_spec(job.building_spec);
                    Pole x = pole_from_cli(b, pole_arg);
                    Json p;
                    p["barycenter"] = x.carrier_bld.vertices();
                    if (x.carrier_bld.size() == 1) p = Json{{"vertex", x.carrier_bld.vertices()[0]}};
                    job.pole_specs.push_back(p);
                } else {
                    job.poles = poles_mode;
                }
                if (!checks.empty()) job.checks = checks;
                job.seed = seed;
                job.jobs = jobs;
                job.max_cells = max_cells;
            }
            auto report = run_verification(job);
            emit(out_path, report.to_string());
            return report.all_ok() ? kExitPass : kExitFail;
        }
        if (*dot_cmd) {
            Json spec = load_json_file(spec_path);
            Building b = building_from_spec(spec);
            if (!pole_arg.empty()) {
                Pole x = pole_from_cli(b, pole_arg);
                auto cls = classify(b, x);
                emit(out_path, dot_export(b, &cls));
            } else {
                emit(out_path, dot_export(b, nullptr));
            }
            return kExitPass;
        }
        if (*rep_cmd) {
            Json j = load_json_file(in_path);
            bool any_fail = false;
            for (const auto& c : j.at("checks")) {
                std::cout << c.at("name").get<std::string>() << ": "
                          << c.at("status").get<std::string>() << " ("
                          << c.at("instances").get<long long>() << " instances)\n";
                if (c.at("status") == "fail") any_fail = true;
            }
            const auto& s = j.at("summary");
            std::cout << "summary: " << s.at("pass") << " pass, " << s.at("fail") << " fail, "
                      << s.at("advisory") << " advisory, " << s.at("skipped") << " skipped\n";
            return any_fail ? kExitFail : kExitPass;
        }
    } catch (const SizeBoundError& err) {
        std::cerr << "size bound: " << err.what() << "\n";
        return kExitSizeBound;
    } catch (const InputError& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
