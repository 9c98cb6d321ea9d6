#include "chebspec/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chebspec {

Problem kepler() {
    Problem p;
    p.name = "kepler";
    p.dim = 4;
    p.rhs = [](const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> dy) {
        const double r = std::hypot(y(0), y(1));
        const double inv_r3 = 1.0 / (r * r * r);
        dy(0) = y(2);
        dy(1) = y(3);
        dy(2) = -y(0) * inv_r3;
        dy(3) = -y(1) * inv_r3;
    };
    p.hamiltonian = [](const Eigen::Ref<const Eigen::VectorXd>& y) {
        return 0.5 * (y(2) * y(2) + y(3) * y(3)) - 1.0 / std::hypot(y(0), y(1));
    };
    p.first_integrals.push_back(
        {"hamiltonian", p.hamiltonian});
    p.first_integrals.push_back(
        {"angular_momentum", [](const Eigen::Ref<const Eigen::VectorXd>& y) {
             return y(0) * y(3) - y(1) * y(2);
         }});
    p.period = 2.0 * std::numbers::pi;
    p.default_y0 = Eigen::Vector4d(0.4, 0.0, 0.0, 2.0);
    return p;
}

Problem linear_test(std::complex<double> lambda) {
    Problem p;
    p.name = "linear";
    if (lambda.imag() == 0.0) {
        const double a = lambda.real();
        p.dim = 1;
        p.rhs = [a](const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> dy) {
            dy(0) = a * y(0);
        };
        p.reference = [a](double t, const Eigen::Ref<const Eigen::VectorXd>& y0) {
            Eigen::VectorXd y(1);
            y(0) = std::exp(a * t) * y0(0);
            return y;
        };
        p.default_y0 = Eigen::VectorXd::Ones(1);
    } else {
        const double a = lambda.real();
        const double w = lambda.imag();
        p.dim = 2;
        p.rhs = [a, w](const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> dy) {
            dy(0) = a * y(0) - w * y(1);
            dy(1) = w * y(0) + a * y(1);
        };
        p.reference = [a, w](double t, const Eigen::Ref<const Eigen::VectorXd>& y0) {
            const double growth = std::exp(a * t);
            const double cw = std::cos(w * t);
            const double sw = std::sin(w * t);
            Eigen::VectorXd y(2);
            y(0) = growth * (cw * y0(0) - sw * y0(1));
            y(1) = growth * (sw * y0(0) + cw * y0(1));
            return y;
        };
        if (a == 0.0) {
            p.period = 2.0 * std::numbers::pi / std::abs(w);
        }
        p.default_y0 = Eigen::Vector2d(1.0, 0.0);
    }
    return p;
}

Problem harmonic_oscillator(double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("harmonic oscillator: omega must be > 0");
    }
    Problem p;
    p.name = "harmonic";
    p.dim = 2;
    p.rhs = [omega](const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> dy) {
        dy(0) = y(1);
        dy(1) = -omega * omega * y(0);
    };
    p.hamiltonian = [omega](const Eigen::Ref<const Eigen::VectorXd>& y) {
        return 0.5 * (y(1) * y(1) + omega * omega * y(0) * y(0));
    };
    p.first_integrals.push_back({"hamiltonian", p.hamiltonian});
    p.reference = [omega](double t, const Eigen::Ref<const Eigen::VectorXd>& y0) {
        const double cw = std::cos(omega * t);
        const double sw = std::sin(omega * t);
        Eigen::VectorXd y(2);
        y(0) = cw * y0(0) + sw / omega * y0(1);
        y(1) = -omega * sw * y0(0) + cw * y0(1);
        return y;
    };
    p.period = 2.0 * std::numbers::pi / omega;
    p.default_y0 = Eigen::Vector2d(1.0, 0.0);
    return p;
}

Problem find_problem(const std::string& name) {
    if (name == "kepler") return kepler();
    if (name == "linear") return linear_test(-1.0);
    if (name == "harmonic") return harmonic_oscillator(1.0);
    throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
    return {"kepler", "linear", "harmonic"};
}

}  // namespace chebspec
