#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace liyau {

// Adaptive Gauss-Kronrod 7-15 on a finite interval. Splits the worst panel
// until |I15 - I7| of every panel is below rel_tol * |I| + abs_tol.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0,
                 int max_panels = 4000) {
    if (a == b) return 0.0;
    // Kronrod 15 nodes/weights on [-1,1]; Gauss 7 uses the odd-indexed nodes.
    static const double xk[15] = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
        -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
        0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static const double wk[15] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
        0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static const double wg[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469, 0.381830050505119, 0.279705391489277,
                                 0.129484966168870};

    struct Panel {
        double a, b, val, err;
    };
    auto eval_panel = [&](double pa, double pb) {
        double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
        double k = 0.0, g = 0.0;
        for (int i = 0; i < 15; ++i) {
            double v = f(c + h * xk[i]);
            k += wk[i] * v;
            if (i % 2 == 1) g += wg[i / 2] * v;
        }
        return Panel{pa, pb, k * h, std::abs((k - g) * h)};
    };

    std::vector<Panel> panels{eval_panel(a, b)};
    for (int iter = 0; iter < max_panels; ++iter) {
        double total = 0.0, err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].val;
            err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        if (err <= rel_tol * std::abs(total) + abs_tol) return total;
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        if (mid == p.a || mid == p.b) return total;  // interval exhausted
        panels[worst] = eval_panel(p.a, mid);
        panels.push_back(eval_panel(mid, p.b));
    }
    double total = 0.0;
    for (const auto& p : panels) total += p.val;
    return total;
}

}  // namespace liyau
