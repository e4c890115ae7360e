#include "staticlab/model_io.hpp"

#include <fstream>
#include <json.hpp>

#include "staticlab/catalog.hpp"
#include "staticlab/errors.hpp"

namespace staticlab {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "staticlab-model/1";

Curve curve_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return Curve::constant(j.at("value").get<double>());
    if (kind == "linear")
        return Curve::linear(j.value("a", 0.0), j.value("b", 1.0));
    if (kind == "sinusoid")
        return Curve::sinusoid(j.value("c0", 0.0), j.value("amp", 1.0), j.value("omega", 1.0),
                               j.value("phase", 0.0));
    if (kind == "sin") return Curve::sine(j.value("omega", 1.0));
    if (kind == "cos") return Curve::cosine(j.value("omega", 1.0));
    if (kind == "sinh") return Curve::hyperbolic_sine();
    if (kind == "cosh") return Curve::hyperbolic_cosine();
    if (kind == "table") {
        auto s = j.at("s").get<std::vector<double>>();
        auto v = j.at("v").get<std::vector<double>>();
        auto dv = j.at("dv").get<std::vector<double>>();
        auto d2v = j.at("d2v").get<std::vector<double>>();
        return HermiteCurve(s, v, dv, d2v).as_curve();
    }
    throw ConfigError("unknown curve kind: " + kind);
}

json curve_to_table(const Curve& c, double lo, double hi, bool margin) {
    const int m = 1600;
    double pad = margin ? 0.12 * (hi - lo) : 0.0;
    double a = lo - pad, b = hi + pad;
    std::vector<double> s(m + 1), v(m + 1), dv(m + 1), d2v(m + 1);
    for (int i = 0; i <= m; ++i) {
        s[i] = a + (b - a) * i / m;
        v[i] = c(s[i], 0);
        dv[i] = c(s[i], 1);
        d2v[i] = c(s[i], 2);
    }
    return json{{"kind", "table"}, {"s", s}, {"v", v}, {"dv", dv}, {"d2v", d2v}};
}

FiberSpec fiber_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "sphere") return make_sphere_fiber(j.at("dim").get<int>(), j.value("radius", 1.0));
    if (kind == "torus")
        return make_torus_fiber(j.at("dim").get<int>(), j.value("period", 2.0 * M_PI));
    if (kind == "hyperbolic")
        return make_hyperbolic_fiber(j.at("dim").get<int>(), j.value("scale", 1.0));
    if (kind == "s2xs2") {
        double rho = j.value("radius", 1.0);
        return make_s2xs2_fiber(rho, rho);
    }
    throw ConfigError("unknown fiber kind: " + kind);
}

json fiber_to_json(const FiberSpec& f) {
    switch (f.kind) {
        case FiberSpec::Kind::Sphere:
            return json{{"kind", "sphere"}, {"dim", f.dim}, {"radius", f.param}};
        case FiberSpec::Kind::Torus:
            return json{{"kind", "torus"}, {"dim", f.dim}, {"period", f.param}};
        case FiberSpec::Kind::Hyperbolic:
            return json{{"kind", "hyperbolic"}, {"dim", f.dim}, {"scale", f.param}};
        default:
            return json{{"kind", "s2xs2"}, {"radius", f.param}};
    }
}

} // namespace

StaticModel load_model_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("schema", "") != kSchema)
        throw ConfigError("config schema must be " + std::string(kSchema));
    if (j.contains("ref")) return build_model(j.at("ref").get<std::string>());

    std::string construction = j.value("construction", "warped");
    std::string name = j.value("name", "model");
    auto kind = model_kind_from_string(j.value("kind", "unified"));
    if (!kind) throw ConfigError("unknown model kind");

    if (construction != "warped") throw ConfigError("unsupported construction: " + construction);

    const json& jb = j.at("base");
    Chart base = Chart::line(jb.at("lo").get<double>(), jb.at("hi").get<double>(),
                             jb.value("periodic", false));

    std::vector<WarpBlock> blocks;
    for (const auto& blk : j.at("blocks"))
        blocks.push_back(WarpBlock{curve_from_json(blk.at("warp")), fiber_from_json(blk.at("fiber"))});

    const json& jf = j.at("f");
    if (jf.at("kind").get<std::string>() == "ode") {
        ManufactureOptions mo;
        mo.periodic = jb.value("periodic", false);
        if (blocks.size() == 1) {
            int n = 1 + blocks[0].fiber.dim;
            if (j.value("reduction", "unified") == "vacuum") mo.kind = ManufactureKind::Vacuum;
            return manufacture_static_warped(blocks[0].warp, blocks[0].fiber, n,
                                             jf.at("f0").get<double>(),
                                             jf.at("df0").get<double>(), base.lo(0), base.hi(0),
                                             mo, name);
        }
        if (blocks.size() == 2) {
            int n = 1 + blocks[0].fiber.dim + blocks[1].fiber.dim;
            return manufacture_static_doubly_warped(
                blocks[0].warp, blocks[0].fiber, blocks[1].fiber, n, jf.at("f0").get<double>(),
                jf.at("df0").get<double>(), jf.at("b0").get<double>(),
                jf.at("db0").get<double>(), base.lo(0), base.hi(0), mo, name);
        }
        throw ConfigError("ode construction supports one or two fiber blocks");
    }

    StaticModel m;
    m.name = name;
    m.metric = make_multiply_warped_product(blocks, base, name);
    m.f = ScalarField::radial(m.metric.chart(), curve_from_json(jf));
    m.kind = *kind;
    if (j.contains("R")) m.known_scalar = j.at("R").get<double>();
    m.closed = j.value("closed", jb.value("periodic", false));
    m.constant_f = jf.at("kind").get<std::string>() == "constant";
    m.warped.valid = true;
    m.warped.base = base;
    m.warped.blocks = blocks;
    return m;
}

StaticModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_model_json(text);
}

std::string save_model_json(const StaticModel& model) {
    if (!model.warped.valid || !model.f.is_radial())
        throw ConfigError("only warped models with radial f serialize");
    const Chart& base = model.warped.base;
    bool periodic = base.periodic(0);

    json j;
    j["schema"] = kSchema;
    j["name"] = model.name;
    j["kind"] = to_string(model.kind);
    j["base"] = json{{"lo", base.lo(0)}, {"hi", base.hi(0)}, {"periodic", periodic}};
    j["closed"] = model.closed;
    if (model.has_known_scalar()) j["R"] = model.known_scalar;
    json blocks = json::array();
    for (const auto& blk : model.warped.blocks) {
        blocks.push_back(json{
            {"warp", curve_to_table(blk.warp, base.lo(0), base.hi(0), periodic)},
            {"fiber", fiber_to_json(blk.fiber)}});
    }
    j["blocks"] = blocks;
    j["f"] = curve_to_table(model.f.radial_curve(), base.lo(0), base.hi(0), periodic);
    return j.dump(1);
}

void save_model_file(const StaticModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config: " + path);
    out << save_model_json(model) << "\n";
}

} // namespace staticlab
