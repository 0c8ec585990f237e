#include "carl/serialization.hpp"

#include "carl/errors.hpp"

#include <array>
#include <charconv>

namespace carl {

Json params_to_json(const ModelParams& p)
{
    return Json{{"rho", p.rho()}, {"delta", p.delta()}, {"gamma1", p.gamma1()},
                {"gamma2", p.gamma2()}, {"kappa", p.kappa()}};
}

ModelParams params_from_json(const Json& j)
{
    const Json& rec = (j.is_object() && j.contains("params")) ? j.at("params") : j;
    if (!rec.is_object()) throw InvalidSpec("parameter record must be a JSON object");
    const auto field = [&](const char* name) {
        if (!rec.contains(name)) throw InvalidSpec(std::string("parameter record is missing '") + name + "'");
        const Json& v = rec.at(name);
        if (!v.is_number()) throw InvalidSpec(std::string("parameter '") + name + "' must be a number");
        return v.get<double>();
    };
    return ModelParams(field("rho"), field("delta"), field("gamma1"), field("gamma2"), field("kappa"));
}

Json matrix_to_json(const Mat3& m)
{
    Json re = Json::array();
    Json im = Json::array();
    for (int i = 0; i < 3; ++i) {
        re.push_back({m(i, 0).real(), m(i, 1).real(), m(i, 2).real()});
        im.push_back({m(i, 0).imag(), m(i, 1).imag(), m(i, 2).imag()});
    }
    return Json{{"re", re}, {"im", im}};
}

Mat3 matrix_from_json(const Json& j)
{
    try {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                m(i, k) = cd(j.at("re").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>(),
                             j.at("im").at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>());
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("malformed matrix record: ") + e.what());
    }
}

std::string format_number(double x)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

} // namespace carl
