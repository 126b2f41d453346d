#include "sobolev/io.hpp"

#include "sobolev/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <cctype>

namespace sobolev::io
{

double round12(double x)
{
    if (!std::isfinite(x))
        return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string dump(const Json& j, int indent)
{
    const std::string raw = j.dump(indent);
    std::string out;
    out.reserve(raw.size());
    bool in_string = false;
    for (std::size_t i = 0; i < raw.size();)
    {
        const char ch = raw[i];
        if (in_string)
        {
            out += ch;
            if (ch == '\\' && i + 1 < raw.size())
                out += raw[++i];
            else if (ch == '"')
                in_string = false;
            ++i;
            continue;
        }
        if (ch == '"')
        {
            in_string = true;
            out += ch;
            ++i;
            continue;
        }
        if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch)))
        {
            std::size_t end = i + 1;
            while (end < raw.size() && std::strchr("0123456789.eE+-", raw[end]))
                ++end;
            const std::string token = raw.substr(i, end - i);
            if (token.find_first_of(".eE") == std::string::npos)
                out += token;
            else
            {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.12g", std::strtod(token.c_str(), nullptr));
                std::string text = buf;
                if (text.find_first_of(".eEn") == std::string::npos)
                    text += ".0";
                out += text;
            }
            i = end;
            continue;
        }
        out += ch;
        ++i;
    }
    return out;
}

Json to_json(const ZonalFunction& u)
{
    Json coeffs = Json::array();
    for (Eigen::Index k = 0; k < u.coeffs().size(); ++k)
        coeffs.push_back(round12(u.coeffs()[k]));
    return Json{{"N", u.params().N()}, {"s", round12(u.params().s())}, {"K", u.K()},
                {"coeffs", std::move(coeffs)}};
}

ZonalFunction zonal_from_json(const Json& j)
{
    try
    {
        const SobolevParams p(j.at("N").get<int>(), j.at("s").get<double>());
        const int K       = j.at("K").get<int>();
        const auto& array = j.at("coeffs");
        if (!array.is_array() || static_cast<int>(array.size()) != K + 1)
            throw DomainError("zonal function JSON: coeffs must hold K + 1 numbers");
        Eigen::VectorXd c(K + 1);
        for (int k = 0; k <= K; ++k)
            c[k] = array[k].get<double>();
        return {p, std::move(c)};
    }
    catch (const Json::exception& e)
    {
        throw DomainError(std::string("zonal function JSON: ") + e.what());
    }
}

Json to_json(const DeficitReport& r)
{
    Json j{{"norm_star_sq", round12(r.norm_star_sq)},
           {"lq_norm", round12(r.lq_norm)},
           {"deficit", round12(r.deficit)},
           {"distance", round12(r.distance)}};
    if (r.nearest)
        j["nearest"] = Json{{"c", round12(r.nearest->c)}, {"t0", round12(r.nearest->t0)}};
    else
        j["nearest"] = nullptr;
    j["ratio"]        = r.ratio ? Json(round12(*r.ratio)) : Json(nullptr);
    j["boundary_hit"] = r.boundary_hit;
    return j;
}

Json to_json(const ScanRecord& r)
{
    Json j{{"member", r.index}, {"family", r.family}, {"label", r.label}};
    if (r.report)
    {
        const Json report = to_json(*r.report);
        for (auto& [key, value] : report.items())
            j[key] = value;
        j["distance_kind"] = "axial (upper bound)";
    }
    else
    {
        j["skipped"] = "on-manifold";
    }
    return j;
}

Json scan_manifest(const ScanConfig& cfg)
{
    Json eps = Json::array();
    for (double e : cfg.eps_grid)
        eps.push_back(round12(e));
    return Json{{"seed", cfg.seed},
                {"K", cfg.K},
                {"M", cfg.quadrature_size()},
                {"families",
                 Json{{"normal", Json{{"directions", cfg.normal_directions},
                                      {"max_degree", cfg.normal_max_degree},
                                      {"decay", round12(cfg.normal_decay)},
                                      {"eps_grid", eps}}},
                      {"random", Json{{"members", cfg.random_members},
                                      {"decay", round12(cfg.random_decay)}}},
                      {"two_bubble", Json{{"members", cfg.bubble_members},
                                          {"t0_min", round12(cfg.bubble_min)},
                                          {"t0_max", round12(cfg.bubble_max)}}}}},
                {"t0_cap", round12(cfg.distance.t0_cap)}};
}

Json scan_summary(const SobolevParams& p, const ScanConfig& cfg, const ScanResult& result)
{
    return Json{{"summary", true},
                {"alpha_hat", round12(result.alpha_hat)},
                {"local_constant", round12(local_constant(p))},
                {"n_members", result.records.size()},
                {"seed", cfg.seed},
                {"skipped", result.skipped},
                {"violations", result.violations},
                {"N", p.N()},
                {"s", round12(p.s())}};
}

Json to_json(const WeakNormConstants& c)
{
    return Json{{"rho", round12(c.rho)}, {"r0", round12(c.r0)},   {"U_weak", round12(c.U_weak)},
                {"C1", round12(c.C1)},   {"C2", round12(c.C2)},   {"C0", round12(c.C0)},
                {"C", round12(c.C)}};
}

Json to_json(const Theorem2Case& c)
{
    return Json{{"profile", c.profile},
                {"lhs", round12(c.lhs)},
                {"rhs", round12(c.rhs)},
                {"margin", round12(c.margin)},
                {"omega_measure", round12(c.omega_measure)},
                {"weak_norm", round12(c.weak_norm)},
                {"coefficient_tail", round12(c.coefficient_tail)},
                {"passed", c.passed}};
}

} // namespace sobolev::io
