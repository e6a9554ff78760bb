#include "affiso/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace affiso::cli {

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, end);
}

namespace {

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

void write_scalar(std::ostream& out, const Json& v) {
    if (v.is_number_float())
        out << format_number(v.get<double>());
    else
        out << v.dump();
}

void write_value(std::ostream& out, const Json& v, int indent) {
    const std::string pad(indent + 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (const auto& [key, item] : v.items()) {
            if (!first) out << ",\n";
            first = false;
            out << pad << Json(key).dump() << ": ";
            write_value(out, item, indent + 2);
        }
        out << '\n' << std::string(indent, ' ') << '}';
    } else if (v.is_array()) {
        const bool flat = std::all_of(v.begin(), v.end(), is_scalar);
        out << '[';
        bool first = true;
        for (const auto& item : v) {
            if (!first) out << (flat ? ", " : ",");
            first = false;
            if (!flat) out << '\n' << pad;
            write_value(out, item, indent + 2);
        }
        if (!flat && !v.empty()) out << '\n' << std::string(indent, ' ');
        out << ']';
    } else {
        write_scalar(out, v);
    }
}

Json ellipse_json(const EllipseParams& p) {
    return Json{{"a", p.a}, {"alpha", p.alpha}, {"k", p.k},
                {"center", Json::array({p.center.first, p.center.second})}};
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
    write_value(out, value, 0);
    out << '\n';
}

Json samples_json(const CircleFunction& f) {
    Json arr = Json::array();
    for (double x : f.values()) arr.push_back(x);
    return arr;
}

Json to_json(const BodyFunctionals& f) {
    Json j;
    j["area"] = f.area;
    j["polar_area"] = f.polar_area ? Json(*f.polar_area) : Json(nullptr);
    j["affine_perimeter"] = f.affine_perimeter;
    j["j_form"] = f.j_form;
    return j;
}

Json to_json(const InequalityReport& r, double tol) {
    Json j;
    j["name"] = std::string(to_string(r.kind));
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["deficit"] = r.deficit;
    j["scale"] = r.scale;
    j["relative_deficit"] = r.relative_deficit;
    j["holds"] = r.holds(tol);
    j["equality"] = r.equality;
    j["fitted_ellipse"] = r.fitted_ellipse ? ellipse_json(*r.fitted_ellipse) : Json(nullptr);
    j["fit_residual"] = r.fit_residual;
    Json details = Json::object();
    for (const auto& [key, value] : r.details) details[key] = value;
    j["details"] = std::move(details);
    return j;
}

Json to_json(const PositionResult& r) {
    Json j;
    j["a"] = r.a;
    j["b"] = r.b;
    j["grad_norm"] = r.grad_norm;
    j["moment_cos"] = r.moment_cos;
    j["moment_sin"] = r.moment_sin;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["min_positioned"] = r.positioned.min();
    return j;
}

Json to_json(const Residual& r) {
    return Json{{"transformed", r.transformed},
                {"reference", r.reference},
                {"absolute", r.absolute()},
                {"relative", r.relative()}};
}

Json to_json(const InvarianceReport& r) {
    Json j;
    j["inverse_square"] = to_json(r.inverse_square);
    j["pairing"] = to_json(r.pairing);
    j["quadratic_form"] = to_json(r.quadratic_form);
    j["cos_moment"] = to_json(r.cos_moment);
    j["sin_moment"] = to_json(r.sin_moment);
    j["functional_i"] = to_json(r.functional_i);
    return j;
}

Json to_json(const SupportDecomposition& d, const CircleFunction& f) {
    Json j;
    j["ratio"] = d.ratio;
    j["reconstruction_error"] = d.reconstruction_error;
    j["tv_mu1"] = tv_norm(d.mu1);
    j["tv_mu2"] = tv_norm(d.mu2);
    j["grid"] = f.grid().size();
    j["h1"] = samples_json(d.h1);
    j["h2"] = samples_json(d.h2);
    return j;
}

void write_trace_csv(std::ostream& out, const std::vector<DemoStep>& steps) {
    out << "step,I,lambda,p,min_u\n";
    for (const auto& s : steps)
        out << s.step << ',' << format_number(s.i_value) << ',' << format_number(s.lambda) << ','
            << format_number(s.p) << ',' << format_number(s.min_u) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "seed,ai_relative_deficit,bs_relative_deficit,ai_equality,bs_equality,"
           "newton_iterations,newton_converged,max_moment,moment_det\n";
    for (const auto& r : rows)
        out << r.seed << ',' << format_number(r.ai_relative_deficit) << ','
            << format_number(r.bs_relative_deficit) << ',' << r.ai_equality << ','
            << r.bs_equality << ',' << r.newton_iterations << ',' << r.newton_converged << ','
            << format_number(r.max_moment) << ',' << format_number(r.moment_det) << '\n';
}

}  // namespace affiso::cli
