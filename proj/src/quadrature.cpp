#include "wfa/quadrature.hpp"

#include <atomic>
#include <cmath>

#include "wfa/errors.hpp"

namespace wfa::quad {

namespace {

std::atomic<double> g_tol{1e-10};

// QUADPACK dqk15 nodes and weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
    double gk, g7;
};

Rule eval_gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        double fsum = f(c - dx) + f(c + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    return {resk * h, resg * h};
}

}  // namespace

double default_tolerance() { return g_tol.load(std::memory_order_relaxed); }

void set_default_tolerance(double tol) {
    if (!(tol > 0.0))
        throw InvalidInputError("quadrature tolerance must be positive");
    g_tol.store(tol, std::memory_order_relaxed);
}

Result gk15(const std::function<double(double)>& f, double a, double b) {
    Rule r = eval_gk15(f, a, b);
    return {r.gk, std::fabs(r.gk - r.g7), 1};
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, std::vector<Panel>* out) {
    if (!(abs_tol > 0.0))
        throw InvalidInputError("integrate: tolerance must be positive");
    if (a == b) return {0.0, 0.0, 0};

    constexpr std::size_t kMaxPanels = 400000;
    const double total_width = b - a;

    struct Item {
        double a, b;
    };
    // Depth-first, left interval first, so accepted panels come out sorted
    // and the accumulation order is deterministic.
    std::vector<Item> stack;
    stack.push_back({a, b});
    Result res;
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        Rule r = eval_gk15(f, it.a, it.b);
        double err = std::fabs(r.gk - r.g7);
        double width = it.b - it.a;
        double local_tol = abs_tol * (width / total_width);
        bool vanishing = width <= 1e-14 * (std::fabs(it.a) + std::fabs(it.b)) ||
                         width < 1e-305;
        if (err <= local_tol || vanishing) {
            res.value += r.gk;
            res.error += err;
            ++res.panels;
            if (res.panels > kMaxPanels)
                throw NumericError("integrate: panel budget exhausted");
            if (out) out->push_back({it.a, it.b, r.gk, err});
        } else {
            double mid = 0.5 * (it.a + it.b);
            stack.push_back({mid, it.b});
            stack.push_back({it.a, mid});
        }
    }
    return res;
}

}  // namespace wfa::quad
