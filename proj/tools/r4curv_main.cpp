#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "r4curv/r4curv.hpp"

namespace {

using nlohmann::ordered_json;
using namespace r4curv;

// Anything wrong with the request itself (flags, files, malformed lists)
// exits 2; mathematical verdicts exit 1; clean runs exit 0.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string piece;
    while (std::getline(in, piece, sep)) out.push_back(piece);
    return out;
}

double parse_real(const std::string& text, const std::string& what) {
    std::string t = detail::trim(text);
    try {
        std::size_t pos = 0;
        double x = std::stod(t, &pos);
        if (pos != t.size()) throw InputError("trailing characters in " + what + " '" + t + "'");
        return x;
    } catch (const std::logic_error&) {
        throw InputError("malformed " + what + " '" + t + "'");
    }
}

int parse_count(const std::string& text, const std::string& what) {
    std::string t = detail::trim(text);
    try {
        std::size_t pos = 0;
        int n = std::stoi(t, &pos);
        if (pos != t.size()) throw InputError("trailing characters in " + what + " '" + t + "'");
        return n;
    } catch (const std::logic_error&) {
        throw InputError("malformed " + what + " '" + t + "'");
    }
}

GridSpec parse_grid(const std::string& text, double inset) {
    std::size_t x = text.find('x');
    if (x == std::string::npos) throw InputError("--grid expects NUxNV, got '" + text + "'");
    GridSpec g;
    g.nu = parse_count(text.substr(0, x), "--grid");
    g.nv = parse_count(text.substr(x + 1), "--grid");
    if (g.nu < 2 || g.nv < 2) throw InputError("--grid needs at least 2 samples per axis");
    if (inset < 0.0 || inset >= 0.5) throw InputError("--inset must lie in [0, 0.5)");
    g.inset = inset;
    return g;
}

NormalField parse_normal_field(const std::string& text) {
    std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 4)
        throw InputError("--nu expects four comma-separated expressions");
    NormalField nf;
    for (int i = 0; i < 4; ++i) {
        try {
            nf.component[i] = parse_expression(detail::trim(parts[i]));
        } catch (const ParseError& e) {
            throw InputError("bad --nu component '" + parts[i] + "': " + e.what());
        }
    }
    return nf;
}

// Writes to --out when given, stdout otherwise.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw InputError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Config {
    std::string surface_path;
    std::string grid_text = "32x32";
    double inset = 0.0;
    std::string out_path;
    std::string svg_path;
    std::string seeds_text = "auto";
    std::vector<std::string> field_tokens;
    std::string nu_text;
    double step = 1e-3;
    int max_steps = 20000;
    ToleranceSet tol;
};

void add_common(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--surface", cfg.surface_path, "surface description file")->required();
    cmd->add_option("--grid", cfg.grid_text, "sample counts, NUxNV");
    cmd->add_option("--inset", cfg.inset, "fraction trimmed from each side of open intervals");
    cmd->add_option("--out", cfg.out_path, "output file (default stdout)");

    ToleranceSet& t = cfg.tol;
    cmd->add_option("--tol-regularity", t.regularity, "minimum EG - F^2 relative to EG");
    cmd->add_option("--tol-inflection", t.inflection, "max(|Delta|, |kN|) for inflection points");
    cmd->add_option("--tol-minimal", t.minimal, "|H| for minimal points");
    cmd->add_option("--tol-semiumbilic", t.semiumbilic, "|kN| for semiumbilic points");
    cmd->add_option("--tol-ellipse-kind", t.ellipse_kind, "segment/circle/point thresholds");
    cmd->add_option("--tol-degenerate-eq", t.degenerate_eq, "direction equation degeneracy");
    cmd->add_option("--tol-orthogonality", t.orthogonality, "asymptotic pair inner product");
    cmd->add_option("--tol-k-normal", t.k_normal, "max |kN| for the vanishing check");
    cmd->add_option("--tol-umbilicity", t.umbilicity, "residual of II_nu - lambda I");
    cmd->add_option("--tol-coincidence", t.coincidence, "angular gap between families, rad");
    cmd->add_option("--tol-factorization", t.factorization, "quartic versus product residual");
    cmd->add_option("--tol-projection", t.projection, "spread of lambda around its median");
    cmd->add_option("--tol-codazzi", t.codazzi, "compatibility residual at step 1e-5");
    cmd->add_option("--tol-sphere-fit", t.sphere_fit, "rms distance to the fitted sphere");
    cmd->add_option("--tol-lambda-floor", t.lambda_floor, "below this, lambda is zero");
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

int cmd_compute(const SurfaceDef& s, const Config& cfg) {
    GridSpec g = parse_grid(cfg.grid_text, cfg.inset);
    std::vector<GridPoint> pts = grid_points(s, g);
    std::vector<std::string> rows(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        FrameData fr = frame_at(s, pts[i].u, pts[i].v, cfg.tol.regularity);
        FormBundle b = fundamental_forms(fr);
        Invariants inv = invariants(b);
        CurvatureEllipse ell = curvature_ellipse(b, cfg.tol.ellipse_kind);
        std::ostringstream r;
        for (double x : {pts[i].u, pts[i].v, b.E, b.F, b.G, b.e1, b.f1, b.g1, b.e2, b.f2,
                         b.g2, inv.H[0], inv.H[1], inv.kN, inv.K, inv.Delta})
            r << fmt_double(x) << ',';
        r << to_string(ell.kind) << ',' << fmt_double(ell.a) << ',' << fmt_double(ell.b);
        rows[i] = r.str();
    });
    OutputTarget out(cfg.out_path);
    out.stream() << "u,v,E,F,G,e1,f1,g1,e2,f2,g2,H1,H2,kN,K,Delta,"
                    "ellipse_kind,ellipse_a,ellipse_b\n";
    for (const std::string& r : rows) out.stream() << r << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int cmd_classify(const SurfaceDef& s, const Config& cfg, bool grid_given) {
    ClassifyOptions opt;
    if (grid_given) {
        GridSpec g = parse_grid(cfg.grid_text, cfg.inset);
        opt.scan = std::max(g.nu, g.nv);
    }
    if (!cfg.nu_text.empty()) opt.nu = parse_normal_field(cfg.nu_text);
    std::vector<ClassifiedPoint> rows = classify_surface(s, opt, cfg.tol);
    OutputTarget out(cfg.out_path);
    out.stream() << "type,u,v,residual,index\n";
    for (const ClassifiedPoint& r : rows) {
        if (r.sentinel) {
            out.stream() << r.type << ",,," << fmt_double(r.residual) << ",\n";
            continue;
        }
        out.stream() << r.type << ',' << fmt_double(r.u) << ',' << fmt_double(r.v) << ','
                     << fmt_double(r.residual) << ','
                     << (r.index ? fmt_double(*r.index) : std::string()) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

// Seeds sit half a cell off the compute samples: periodic axes shift to the
// cell centers, open axes (already cell centered) take the interior corners.
std::vector<GridPoint> auto_seeds(const SurfaceDef& s, const GridSpec& g) {
    auto axis = [](const DomainInterval& r, int n, double inset) {
        std::vector<double> out;
        if (r.periodic) {
            for (int i = 0; i < n; ++i) out.push_back(r.lo + r.span() * (i + 0.5) / n);
        } else {
            double lo = r.lo + inset * r.span();
            double span = r.span() * (1.0 - 2.0 * inset);
            for (int i = 1; i < n; ++i) out.push_back(lo + span * i / n);
        }
        return out;
    };
    std::vector<double> us = axis(s.u_range, g.nu, g.inset);
    std::vector<double> vs = axis(s.v_range, g.nv, g.inset);
    std::vector<GridPoint> out;
    for (double u : us)
        for (double v : vs) out.push_back({u, v});
    return out;
}

std::vector<GridPoint> parse_seeds(const std::string& text) {
    std::vector<GridPoint> out;
    for (const std::string& pair : split(text, ';')) {
        if (detail::trim(pair).empty()) continue;
        std::vector<std::string> uv = split(pair, ',');
        if (uv.size() != 2)
            throw InputError("--seeds expects 'u,v;u,v;...' pairs, got '" + pair + "'");
        out.push_back({parse_real(uv[0], "seed"), parse_real(uv[1], "seed")});
    }
    if (out.empty()) throw InputError("--seeds is empty");
    return out;
}

int cmd_flow(const SurfaceDef& s, const Config& cfg, bool grid_given) {
    std::vector<LineField> fields;
    for (const std::string& tok : cfg.field_tokens) {
        std::optional<LineField> f = parse_line_field(detail::trim(tok));
        if (!f) throw InputError("unknown field '" + tok + "'");
        fields.push_back(*f);
    }
    if (fields.empty()) fields.push_back(LineField::asymptotic1);

    std::optional<NormalField> nu;
    if (!cfg.nu_text.empty()) nu = parse_normal_field(cfg.nu_text);
    for (LineField f : fields)
        if ((f == LineField::nu_min || f == LineField::nu_max) && !nu)
            throw InputError("--nu is required for nu-min / nu-max fields");

    // The default seed grid stays small: flows are long.
    GridSpec g = grid_given ? parse_grid(cfg.grid_text, cfg.inset) : GridSpec{6, 6, cfg.inset};
    std::vector<GridPoint> seeds =
        cfg.seeds_text == "auto" ? auto_seeds(s, g) : parse_seeds(cfg.seeds_text);

    if (cfg.step <= 0.0) throw InputError("--step must be positive");
    if (cfg.max_steps < 1) throw InputError("--max-steps must be at least 1");
    FlowOptions fopt;
    fopt.step = cfg.step;
    fopt.max_steps = cfg.max_steps;

    struct Job {
        LineField field;
        GridPoint seed;
    };
    std::vector<Job> jobs;
    for (LineField f : fields)
        for (const GridPoint& p : seeds) jobs.push_back({f, p});

    std::vector<std::optional<FlowCurve>> done(jobs.size());
    std::vector<std::string> skipped(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        FieldSpec spec;
        spec.kind = jobs[i].field;
        spec.nu = nu;
        // the second member of a pair starts on the other branch at the seed
        int branch =
            (spec.kind == LineField::asymptotic2 || spec.kind == LineField::mean2) ? 1 : 0;
        try {
            FieldSampler sampler = make_field_sampler(s, spec, cfg.tol);
            done[i] = integrate_line_field(s, sampler, jobs[i].seed.u, jobs[i].seed.v, fopt,
                                           cfg.tol, branch);
        } catch (const SeedDegenerate& e) {
            skipped[i] = e.what();
        }
    });

    std::vector<FlowTrace> traces;
    OutputTarget out(cfg.out_path);
    out.stream() << "curve,vertex,u,v,x,y,z,w\n";
    std::size_t job = 0;
    for (LineField f : fields) {
        int ordinal = 0;
        for (std::size_t si = 0; si < seeds.size(); ++si, ++job, ++ordinal) {
            if (!done[job]) {
                std::cerr << "warning: seed (" << fmt_double(seeds[si].u) << ", "
                          << fmt_double(seeds[si].v) << ") skipped for " << to_string(f) << ": "
                          << skipped[job] << '\n';
                continue;
            }
            std::string id = std::string(to_string(f)) + "-" + std::to_string(ordinal);
            const FlowCurve& c = *done[job];
            for (std::size_t k = 0; k < c.pts.size(); ++k) {
                const FlowVertex& fv = c.pts[k];
                out.stream() << id << ',' << k << ',' << fmt_double(fv.u) << ','
                             << fmt_double(fv.v) << ',' << fmt_double(fv.p[0]) << ','
                             << fmt_double(fv.p[1]) << ',' << fmt_double(fv.p[2]) << ','
                             << fmt_double(fv.p[3]) << '\n';
            }
            traces.push_back({f, std::move(*done[job])});
        }
    }

    if (!cfg.svg_path.empty()) {
        std::ofstream svg(cfg.svg_path);
        if (!svg) throw InputError("cannot open SVG file '" + cfg.svg_path + "'");
        write_flow_svg(svg, s, traces);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

std::string fmt_vec4(const Vec4& p, int precision) {
    std::string out = "(";
    for (int i = 0; i < 4; ++i)
        out += (i ? ", " : "") + fmt_double(p[i], precision);
    return out + ")";
}

void print_verify_table(std::ostream& os, const SurfaceDef& s, const GridSpec& g,
                        const VerificationReport& rep) {
    os << "surface: " << s.name << "\n";
    os << "grid: " << g.nu << "x" << g.nv << ", inset " << fmt_double(g.inset) << "\n\n";
    os << std::left << std::setw(12) << "condition" << std::setw(10) << "verdict"
       << std::setw(14) << "max-residual" << std::setw(12) << "threshold" << std::setw(9)
       << "checked" << std::setw(9) << "skipped" << "statement\n";
    for (const ConditionResult& c : rep.conditions) {
        os << std::left << std::setw(12) << c.key << std::setw(10) << to_string(c.status)
           << std::setw(14) << fmt_double(c.residual, 3) << std::setw(12)
           << fmt_double(c.threshold, 3) << std::setw(9) << c.checked << std::setw(9)
           << c.skipped << c.label << "\n";
    }
    os << "\numbilical factor: median " << fmt_double(rep.lambda_median, 12) << ", spread "
       << fmt_double(rep.lambda_spread, 3) << "\n";
    os << "min |K - lambda^2| over the grid: " << fmt_double(rep.min_k_gap, 6) << "\n";

    os << "sphere fit: ";
    switch (rep.sphere_status) {
    case SphereFitStatus::pass:
    case SphereFitStatus::fail:
        os << to_string(rep.sphere_status);
        if (rep.sphere) {
            os << " (center " << fmt_vec4(rep.sphere->center, 9) << ", radius "
               << fmt_double(rep.sphere->radius, 12) << ", rms "
               << fmt_double(rep.sphere->rms, 3) << ", condition "
               << fmt_double(rep.sphere->condition, 3) << ")";
        } else {
            os << " (point cloud does not determine a sphere)";
        }
        os << "\n";
        break;
    case SphereFitStatus::not_applicable:
        os << "not applicable (umbilical factor not constant and positive)\n";
        break;
    case SphereFitStatus::hypothesis_violated:
        os << "withheld: K = r^2 somewhere on the grid (min |K - lambda^2| = "
           << fmt_double(rep.min_k_gap, 3) << ")\n";
        break;
    }

    os << "consistency: "
       << (rep.consistent ? "equivalent conditions agree"
                          : "CONFLICT: equivalent conditions disagree")
       << "\n";
    os << "overall: " << (rep.overall_pass ? "pass" : "fail") << "\n";
}

ordered_json verify_to_json(const SurfaceDef& s, const GridSpec& g,
                            const VerificationReport& rep) {
    ordered_json j;
    j["surface"] = s.name;
    j["grid"] = {{"nu", g.nu}, {"nv", g.nv}, {"inset", g.inset}};
    for (const ConditionResult& c : rep.conditions) {
        j[c.key] = {{"verdict", to_string(c.status)}, {"max_residual", c.residual},
                    {"threshold", c.threshold},       {"checked", c.checked},
                    {"skipped", c.skipped},           {"statement", c.label}};
    }
    ordered_json sf;
    sf["verdict"] = to_string(rep.sphere_status);
    if (rep.sphere) {
        sf["center"] = {rep.sphere->center[0], rep.sphere->center[1], rep.sphere->center[2],
                        rep.sphere->center[3]};
        sf["radius"] = rep.sphere->radius;
        sf["rms"] = rep.sphere->rms;
        sf["condition"] = rep.sphere->condition;
    }
    j["sphere_fit"] = sf;
    j["lambda_median"] = rep.lambda_median;
    j["lambda_spread"] = rep.lambda_spread;
    j["min_k_gap"] = rep.min_k_gap;
    j["consistent"] = rep.consistent;
    j["overall_pass"] = rep.overall_pass;
    return j;
}

int cmd_verify(const SurfaceDef& s, const Config& cfg) {
    GridSpec g = parse_grid(cfg.grid_text, cfg.inset);
    VerificationReport rep = verify_surface(s, g, cfg.tol);
    print_verify_table(std::cout, s, g, rep);
    if (!cfg.out_path.empty()) {
        std::ofstream jf(cfg.out_path);
        if (!jf) throw InputError("cannot open output file '" + cfg.out_path + "'");
        jf << verify_to_json(s, g, rep).dump(2) << '\n';
    }
    return rep.overall_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fit-sphere
// ---------------------------------------------------------------------------

int cmd_fit_sphere(const SurfaceDef& s, const Config& cfg) {
    GridSpec g = parse_grid(cfg.grid_text, cfg.inset);
    std::vector<GridPoint> pts = grid_points(s, g);
    std::vector<Vec4> cloud(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        std::array<double, 4> p = eval_position(s, pts[i].u, pts[i].v);
        cloud[i] = Vec4(p[0], p[1], p[2], p[3]);
    });
    SphereFit fit;
    try {
        fit = fit_sphere(cloud);
    } catch (const DegenerateCloud& e) {
        std::cout << "degenerate cloud: " << e.what() << "\n";
        std::cout << "verdict: no sphere\n";
        return 1;
    }
    std::cout << "center = " << fmt_vec4(fit.center, 12) << "\n";
    std::cout << "radius = " << fmt_double(fit.radius, 12) << "\n";
    std::cout << "rms = " << fmt_double(fit.rms, 6) << "\n";
    std::cout << "condition = " << fmt_double(fit.condition, 6) << "\n";
    double threshold = cfg.tol.sphere_fit * std::max(1.0, fit.radius);
    bool ok = fit.rms < threshold;
    std::cout << "verdict: " << (ok ? "hyperspherical" : "not hyperspherical") << " (rms "
              << (ok ? "within " : "exceeds ") << fmt_double(threshold, 3) << ")\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature toolkit for surfaces immersed in R^4"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* compute = app.add_subcommand("compute", "curvature grid as CSV");
    add_common(compute, cfg);

    CLI::App* classify = app.add_subcommand("classify", "locate distinguished points");
    add_common(classify, cfg);
    classify->add_option("--nu", cfg.nu_text, "normal field, four comma-separated expressions");

    CLI::App* flow = app.add_subcommand("flow", "integrate curvature line fields");
    add_common(flow, cfg);
    flow->add_option("--seeds", cfg.seeds_text, "'u,v;u,v;...' or 'auto'");
    flow->add_option("--field", cfg.field_tokens,
                     "asym1|asym2|mean1|mean2|nu-min|nu-max|axial-large|axial-small")
        ->delimiter(',');
    flow->add_option("--svg", cfg.svg_path, "also draw the chart-plane picture");
    flow->add_option("--nu", cfg.nu_text, "normal field for nu-min / nu-max");
    flow->add_option("--step", cfg.step, "arc length per integration step");
    flow->add_option("--max-steps", cfg.max_steps, "step cap per direction");

    CLI::App* verify = app.add_subcommand("verify", "check the curvature identity chain");
    add_common(verify, cfg);

    CLI::App* fit = app.add_subcommand("fit-sphere", "least-squares hypersphere through a grid");
    add_common(fit, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SurfaceDef s = load_surface_file(cfg.surface_path);
        if (compute->parsed()) return cmd_compute(s, cfg);
        if (classify->parsed()) return cmd_classify(s, cfg, classify->count("--grid") > 0);
        if (flow->parsed()) return cmd_flow(s, cfg, flow->count("--grid") > 0);
        if (verify->parsed()) return cmd_verify(s, cfg);
        if (fit->parsed()) return cmd_fit_sphere(s, cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const SurfaceFormatError& e) {
        std::cerr << "error: " << cfg.surface_path;
        if (e.line() > 0) std::cerr << ":" << e.line();
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
