#include "liyau/cd_function.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "liyau/quadrature.hpp"
#include "liyau/upsilon.hpp"

namespace liyau {

namespace {

void require_domain(double x) {
    if (x < 0.0 || !std::isfinite(x))
        throw std::domain_error("CD-function argument must be finite and >= 0, got " +
                                std::to_string(x));
}

std::map<std::string, double> parse_params(const std::string& spec, std::string& name) {
    std::map<std::string, double> kv;
    auto open = spec.find('(');
    if (open == std::string::npos) {
        name = spec;
        return kv;
    }
    if (spec.back() != ')') throw std::invalid_argument("malformed CD spec: " + spec);
    name = spec.substr(0, open);
    std::string args = spec.substr(open + 1, spec.size() - open - 2);
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("CD spec parameters use name=value: " + spec);
        kv[tok.substr(0, eq)] = std::stod(tok.substr(eq + 1));
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key,
            std::optional<double> fallback = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) return *fallback;
        throw std::invalid_argument("CD spec missing parameter " + key);
    }
    double v = it->second;
    kv.erase(it);
    return v;
}

}  // namespace

namespace {

// -log(tanh y) = log1p(e^{-2y}) - log1p(-e^{-2y}); keeps full relative
// accuracy where tanh y rounds to 1
double neg_log_tanh(double y) {
    double q = std::exp(-2.0 * y);
    return std::log1p(q) - std::log1p(-q);
}

}  // namespace

CDFunction cd_two_point() {
    CDFunction f;
    f.name = "two_point";
    f.eval = [](double a) {
        require_domain(a);
        return 2.0 * std::sinh(a);
    };
    f.closed_tail = [](double x) { return 0.5 * neg_log_tanh(0.5 * x); };
    f.closed_phi = [](double t) { return neg_log_tanh(t); };
    f.gamma_rate = 1.0;
    f.a_star = 1.0;  // F/x is convex on all of (0,inf); any split works
    return f;
}

CDFunction cd_two_point_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("two_point_alpha needs alpha in (0,1)");
    const double c = 1.0 - alpha;
    CDFunction f;
    f.name = "two_point_alpha(alpha=" + std::to_string(alpha) + ")";
    f.eval = [c](double a) {
        require_domain(a);
        return 2.0 * std::sinh(c * a);
    };
    f.closed_tail = [c](double x) { return 0.5 / c * neg_log_tanh(0.5 * c * x); };
    f.closed_phi = [c](double t) { return neg_log_tanh(c * t) / c; };
    f.gamma_rate = c;
    f.a_star = 1.0 / c;
    return f;
}

CDFunction cd_quadratic(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("quadratic needs c > 0");
    CDFunction f;
    f.name = "quadratic(c=" + std::to_string(c) + ")";
    f.eval = [c](double x) {
        require_domain(x);
        return c * x * x;
    };
    f.closed_tail = [c](double x) { return 1.0 / (c * x); };
    f.closed_phi = [c](double t) { return 1.0 / (c * t); };
    f.nu = c;
    f.a_star = 1.0;  // F/x is linear: gamma = 1
    return f;
}

CDFunction cd_power(double c, double p) {
    if (!(c > 0.0) || !(p > 1.0)) throw std::invalid_argument("power needs c > 0, p > 1");
    CDFunction f;
    f.name = "power(c=" + std::to_string(c) + ",p=" + std::to_string(p) + ")";
    f.eval = [c, p](double x) {
        require_domain(x);
        return c * std::pow(x, p);
    };
    f.closed_tail = [c, p](double x) { return std::pow(x, 1.0 - p) / (c * (p - 1.0)); };
    f.closed_phi = [c, p](double t) { return std::pow(c * (p - 1.0) * t, -1.0 / (p - 1.0)); };
    if (p == 2.0) f.nu = c;
    f.a_star = 1.0;
    return f;
}

// exp(-(1-l)x/2) (l e^{(1-l)x} + (1-l) e^{-l x} - 1); the bracket equals
// l Y((1-l)x) + (1-l) Y(-l x), which is the cancellation-free form near 0.
CDFunction cd_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must be in (0,1)");
    CDFunction f;
    f.name = "lambda(lambda=" + std::to_string(lambda) + ")";
    const double l = lambda;
    f.eval = [l](double x) {
        require_domain(x);
        if ((1.0 - l) * x < 300.0) {
            return std::exp(-0.5 * (1.0 - l) * x) *
                   (l * upsilon((1.0 - l) * x) + (1.0 - l) * upsilon(-l * x));
        }
        return l * std::exp(0.5 * (1.0 - l) * x) + (1.0 - l) * std::exp(-0.5 * (1.0 + l) * x) -
               std::exp(-0.5 * (1.0 - l) * x);
    };
    f.gamma_rate = 0.5 * (1.0 - l);
    f.nu = 0.5 * l * (1.0 - l);
    f.a_star = 4.0;  // F(x)/x is convex on [4,inf) for this family
    return f;
}

CDFunction cd_path3() {
    CDFunction f;
    f.name = "path3";
    f.eval = [](double a) {
        require_domain(a);
        double s = std::sinh(a) * std::exp(-0.5 * a);
        return 2.0 * s * s;  // = e^{-a}(e^a - e^{-a})^2 / 2
    };
    f.gamma_rate = 1.0;
    f.nu = 2.0;
    f.a_star = 1.0;
    return f;
}

CDFunction cd_triangle_raw() {
    CDFunction f;
    f.name = "triangle_raw";
    f.eval = [](double a) {
        require_domain(a);
        return 2.0 * (std::expm1(0.5 * a) - 2.0 * std::expm1(-0.5 * a));
    };
    f.is_cd_hint = false;  // F(x)/x decreases near 0
    f.gamma_rate = 0.5;
    return f;
}

CDFunction cd_triangle_minorant() {
    CDFunction f;
    f.name = "triangle_minorant";
    f.eval = [](double a) {
        require_domain(a);
        return 4.0 * std::sinh(0.5 * a);
    };
    f.closed_tail = [](double x) { return 0.5 * neg_log_tanh(0.25 * x); };
    f.closed_phi = [](double t) { return 2.0 * neg_log_tanh(t); };
    f.gamma_rate = 0.5;
    f.a_star = 1.0;
    return f;
}

CDFunction cd_complete(int D, double mu0, double alpha) {
    if (D < 1 || !(mu0 > 0.0) || alpha < 0.0 || alpha > 0.5)
        throw std::invalid_argument("complete needs D >= 1, mu0 > 0, alpha in [0,1/2]");
    CDFunction f;
    f.name = "complete(D=" + std::to_string(D) + ",mu0=" + std::to_string(mu0) +
             ",alpha=" + std::to_string(alpha) + ")";
    const double eta = mu0 / D;
    const double scale = D / (mu0 * mu0);
    f.eval = [eta, scale, D, alpha](double a) {
        require_domain(a);
        double z = eta * a;
        if (z < 300.0)
            return scale * std::exp(-alpha * z) * std::expm1(z) * (D * std::exp(-z) + 1.0);
        return scale * (std::exp((1.0 - alpha) * z) - D * std::exp(-(1.0 + alpha) * z) +
                        (D - 1) * std::exp(-alpha * z));
    };
    f.is_cd_hint = (D == 1);  // F/x dips below its limit near 0 once D >= 2
    f.gamma_rate = (1.0 - alpha) * eta;
    f.a_star = 2.0;
    return f;
}

CDFunction cd_ricci_flat(int D, double mu0) {
    if (D < 2 || !(mu0 > 0.0)) throw std::invalid_argument("ricci_flat needs D >= 2, mu0 > 0");
    CDFunction f;
    f.name = "ricci_flat(D=" + std::to_string(D) + ",mu0=" + std::to_string(mu0) + ")";
    const double eta = mu0 / D;
    const double scale = D / (mu0 * mu0);
    const double q = (D + 1.0) / (D - 1.0);
    f.eval = [eta, scale, D, q](double a) {
        require_domain(a);
        double z = eta * a;
        if (z < 300.0)
            return scale * std::exp(-z) *
                   (upsilon(2.0 * z) + (D - 1) * upsilon(-2.0 * z / (D - 1)));
        // expanded form for large z; the linear terms cancel algebraically
        return scale * (std::exp(z) + (D - 1) * std::exp(-q * z) - D * std::exp(-z));
    };
    f.gamma_rate = eta;
    f.nu = 2.0 / (D - 1);
    f.a_star = 2.0 * (D - 1) / mu0;  // scaled image of the lambda-family threshold 4
    return f;
}

CDFunction cd_ricci_flat_alpha(int D, double mu0, double alpha) {
    if (D < 2 || !(mu0 > 0.0) || !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ricci_flat_alpha needs D >= 2, mu0 > 0, alpha in (0,1)");
    CDFunction f;
    f.name = "ricci_flat_alpha(D=" + std::to_string(D) + ",mu0=" + std::to_string(mu0) +
             ",alpha=" + std::to_string(alpha) + ")";
    const double eta = mu0 / D;
    const double scale = D / (mu0 * mu0);
    f.eval = [eta, scale, alpha](double a) {
        require_domain(a);
        double z = eta * a;
        if (2.0 * (1.0 - alpha) * z < 300.0)
            return scale * std::exp(-(1.0 - alpha) * z) *
                   (upsilon(2.0 * (1.0 - alpha) * z) +
                    (1.0 - alpha) / alpha * upsilon(-2.0 * alpha * z));
        return scale *
               (std::exp((1.0 - alpha) * z) +
                (1.0 - alpha) / alpha * std::exp(-(1.0 + alpha) * z) -
                1.0 / alpha * std::exp(-(1.0 - alpha) * z));
    };
    f.gamma_rate = (1.0 - alpha) * eta;
    f.nu = 2.0 * (1.0 - alpha) / D;
    f.a_star = 2.0 * D / mu0;
    return f;
}

CDFunction cd_tau_lattice(int d, double tau) {
    if (d < 1 || !(tau > 0.0)) throw std::invalid_argument("tau_lattice needs d >= 1, tau > 0");
    CDFunction f = cd_ricci_flat(2 * d, tau * tau);
    f.name = "tau_lattice(d=" + std::to_string(d) + ",tau=" + std::to_string(tau) + ")";
    return f;
}

CDFunction make_cd(const std::string& spec) {
    std::string name;
    auto kv = parse_params(spec, name);
    CDFunction f;
    if (name == "two_point") {
        f = cd_two_point();
    } else if (name == "two_point_alpha") {
        f = cd_two_point_alpha(take(kv, "alpha"));
    } else if (name == "quadratic") {
        f = cd_quadratic(take(kv, "c", 1.0));
    } else if (name == "power") {
        f = cd_power(take(kv, "c", 1.0), take(kv, "p"));
    } else if (name == "lambda") {
        f = cd_lambda(take(kv, "lambda"));
    } else if (name == "path3") {
        f = cd_path3();
    } else if (name == "triangle_raw") {
        f = cd_triangle_raw();
    } else if (name == "triangle_minorant") {
        f = cd_triangle_minorant();
    } else if (name == "complete") {
        int D = static_cast<int>(take(kv, "D"));
        f = cd_complete(D, take(kv, "mu0", 1.0), take(kv, "alpha", 0.0));
    } else if (name == "ricci_flat") {
        int D = static_cast<int>(take(kv, "D"));
        f = cd_ricci_flat(D, take(kv, "mu0", 1.0));
    } else if (name == "ricci_flat_alpha") {
        int D = static_cast<int>(take(kv, "D"));
        f = cd_ricci_flat_alpha(D, take(kv, "mu0", 1.0), take(kv, "alpha"));
    } else if (name == "tau_lattice") {
        int d = static_cast<int>(take(kv, "d"));
        f = cd_tau_lattice(d, take(kv, "tau"));
    } else {
        throw std::invalid_argument("unknown CD-function: " + name);
    }
    if (!kv.empty()) throw std::invalid_argument("unused parameter in CD spec: " + spec);
    return f;
}

std::vector<double> cd_default_grid() {
    std::vector<double> grid;
    for (int k = -6; k <= 2; ++k) grid.push_back(std::pow(10.0, k));
    for (int i = 0; i < 500; ++i) grid.push_back(0.01 + (50.0 - 0.01) * i / 499.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

CDReport verify_cd(const CDFunction& F, const std::vector<double>& grid, double tail_probe) {
    CDReport rep;
    rep.integrable_hint = F.integrable_hint;
    rep.f0_ok = (F.eval(0.0) == 0.0);
    if (!rep.f0_ok) rep.detail = "F(0) != 0";

    rep.nonneg_ok = true;
    rep.monotone_ok = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (double x : grid) {
        double v = F.eval(x);
        if (!(v >= 0.0)) {
            rep.nonneg_ok = false;
            if (std::isnan(rep.first_violation)) rep.first_violation = x;
            if (rep.detail.empty()) rep.detail = "F < 0 at x=" + std::to_string(x);
            break;
        }
        double h = v / x;
        if (!(h > prev)) {  // strict; tolerance 0 by design
            rep.monotone_ok = false;
            if (std::isnan(rep.first_violation)) rep.first_violation = x;
            if (rep.detail.empty())
                rep.detail = "F(x)/x not strictly increasing at x=" + std::to_string(x);
            break;
        }
        prev = h;
    }

    // Octave probe of int dr/F: geometric decay of successive increments is
    // the integrability heuristic (it cannot certify the improper integral).
    if (rep.nonneg_ok) {
        double x = tail_probe;
        double last = std::numeric_limits<double>::infinity();
        int decaying = 0;
        bool vanished = false;
        for (int k = 0; k < 80; ++k) {
            double seg = integrate([&](double r) {
                double v = F.eval(r);
                return std::isfinite(v) && v > 0.0 ? 1.0 / v : 0.0;
            }, x, 2.0 * x, 1e-10, 0.0);
            if (seg < 1e-280) {
                vanished = true;
                break;
            }
            if (seg < 0.75 * last) ++decaying; else decaying = 0;
            last = seg;
            x *= 2.0;
        }
        rep.integrable_heuristic = vanished || decaying >= 6;
        if (!rep.integrable_heuristic && rep.detail.empty())
            rep.detail = "octave integrals of 1/F do not decay geometrically";
    }
    return rep;
}

CDFunction combine(CombineOp op, const CDFunction& f1, const CDFunction* f2, double a, double b) {
    CDFunction out;
    auto e1 = f1.eval;
    switch (op) {
        case CombineOp::Sum: {
            if (!f2) throw std::invalid_argument("combine(sum) needs two operands");
            auto e2 = f2->eval;
            out.name = "sum(" + f1.name + "," + f2->name + ")";
            out.eval = [e1, e2](double x) { return e1(x) + e2(x); };
            out.integrable_hint = f1.integrable_hint || f2->integrable_hint;
            out.nu = f1.nu + f2->nu;  // NaN propagates when either rate is unknown
            out.gamma_rate = std::max(f1.gamma_rate, f2->gamma_rate);
            break;
        }
        case CombineOp::Min: {
            if (!f2) throw std::invalid_argument("combine(min) needs two operands");
            auto e2 = f2->eval;
            out.name = "min(" + f1.name + "," + f2->name + ")";
            out.eval = [e1, e2](double x) { return std::min(e1(x), e2(x)); };
            out.integrable_hint = f1.integrable_hint && f2->integrable_hint;
            out.gamma_rate = std::min(f1.gamma_rate, f2->gamma_rate);
            break;
        }
        case CombineOp::Scale: {
            if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("scale needs a, b > 0");
            out.name = "scale(" + std::to_string(a) + "," + std::to_string(b) + "," + f1.name + ")";
            out.eval = [e1, a, b](double x) { return a * e1(b * x); };
            out.integrable_hint = f1.integrable_hint;
            out.nu = a * b * b * f1.nu;
            out.gamma_rate = b * f1.gamma_rate;
            out.a_star = f1.a_star / b;
            break;
        }
    }
    CDReport rep = verify_cd(out);
    if (!rep.pass())
        throw std::logic_error("combine produced a non-CD-function (" + out.name +
                               "): " + rep.detail);
    return out;
}

double superadditivity_gamma(const std::function<double(double)>& H, double a_star) {
    if (!(a_star > 0.0)) throw std::invalid_argument("superadditivity_gamma needs a_star > 0");
    const int n = 4000;
    double c0 = std::numeric_limits<double>::infinity(), c1 = 0.0;
    double h = std::max(1e-7, 1e-7 * a_star);
    for (int i = 0; i <= n; ++i) {
        double x = a_star * i / n;
        double d;
        if (x < h)
            d = (H(x + h) - H(x)) / h;
        else
            d = (H(x + h) - H(x - h)) / (2.0 * h);
        c0 = std::min(c0, d);
        c1 = std::max(c1, d);
    }
    if (!(c0 > 0.0))
        throw std::invalid_argument("superadditivity_gamma: min H' on [0,a*] is not positive");
    return std::max(1.0, c1 / c0);
}

double superadditivity_worst_violation(const std::function<double(double)>& H, double gamma,
                                       double box, int n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, box);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double x = unif(rng), y = unif(rng);
        double lhs = H(x) + H(y);
        double rhs = H(x + gamma * y);
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        worst = std::max(worst, (lhs - rhs) / scale);
    }
    return worst;
}

double eta_root(double eta) {
    if (!(eta > 1.0)) throw std::domain_error("eta_root needs eta > 1");
    auto f = [eta](double a) { return std::expm1(-eta * a) + a; };
    // f < 0 at (eta-1)/eta^2 (second-order bound), f(1) = e^{-eta} > 0
    double lo = (eta - 1.0) / (eta * eta), hi = 1.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace liyau
