/*################################################################################
  ##
  ##   Copyright (C) 2024-2026 the optscale authors
  ##
  ##   This file is part of the optscale library.
  ##
  ##   Licensed under the Apache License, Version 2.0 (the "License");
  ##   you may not use this file except in compliance with the License.
  ##   You may obtain a copy of the License at
  ##
  ##       http://www.apache.org/licenses/LICENSE-2.0
  ##
  ##   Unless required by applicable law or agreed to in writing, software
  ##   distributed under the License is distributed on an "AS IS" BASIS,
  ##   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  ##   See the License for the specific language governing permissions and
  ##   limitations under the License.
  ##
  ################################################################################*/

#include "optscale/target_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "optscale/quadrature.hpp"

namespace optscale {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

} // namespace

TargetDensity TargetDensity::trunc_normal(double mu, double sigma, double a,
                                          double b) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("truncnormal: sigma must be positive");
    }
    if (!(a < b)) {
        throw std::invalid_argument("truncnormal: requires a < b");
    }
    TargetDensity t;
    t.family_ = Family::trunc_normal;
    t.support_ = {Support::Kind::interval, a, b};
    t.mu_ = mu;
    t.sigma_ = sigma;
    t.cdf_lo_ = normal_cdf((a - mu) / sigma);
    t.cdf_span_ = normal_cdf((b - mu) / sigma) - t.cdf_lo_;
    if (!(t.cdf_span_ > 0.0)) {
        throw std::invalid_argument("truncnormal: interval has no mass");
    }
    t.log_norm_ = std::log(sigma) + kLogSqrt2Pi + std::log(t.cdf_span_);
    std::ostringstream os;
    os << "truncnormal(" << mu << "," << sigma << "," << a << "," << b << ")";
    t.name_ = os.str();
    return t;
}

TargetDensity TargetDensity::uniform(double a, double b) {
    if (!(a < b)) {
        throw std::invalid_argument("uniform: requires a < b");
    }
    TargetDensity t;
    t.family_ = Family::uniform;
    t.support_ = {Support::Kind::interval, a, b};
    t.log_norm_ = std::log(b - a);
    std::ostringstream os;
    os << "uniform(" << a << "," << b << ")";
    t.name_ = os.str();
    return t;
}

TargetDensity TargetDensity::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("normal: sigma must be positive");
    }
    TargetDensity t;
    t.family_ = Family::normal;
    t.support_ = {Support::Kind::unbounded, 0.0, 0.0};
    t.mu_ = mu;
    t.sigma_ = sigma;
    t.log_norm_ = std::log(sigma) + kLogSqrt2Pi;
    std::ostringstream os;
    os << "normal(" << mu << "," << sigma << ")";
    t.name_ = os.str();
    return t;
}

double TargetDensity::log_f(double x) const {
    switch (family_) {
    case Family::trunc_normal: {
        if (!support_.contains(x)) {
            return kNegInf;
        }
        const double z = (x - mu_) / sigma_;
        return -0.5 * z * z - log_norm_;
    }
    case Family::uniform:
        return support_.contains(x) ? -log_norm_ : kNegInf;
    case Family::normal: {
        const double z = (x - mu_) / sigma_;
        return -0.5 * z * z - log_norm_;
    }
    }
    return kNegInf;
}

double TargetDensity::dlog_f(double x) const {
    if (!support_.contains(x)) {
        throw std::domain_error("dlog_f: point not in the open support");
    }
    switch (family_) {
    case Family::trunc_normal:
    case Family::normal:
        return -(x - mu_) / (sigma_ * sigma_);
    case Family::uniform:
        return 0.0;
    }
    return 0.0;
}

double TargetDensity::sample(Rng& rng) const {
    switch (family_) {
    case Family::trunc_normal: {
        const double u = rng.uniform();
        return mu_ + sigma_ * normal_quantile(cdf_lo_ + u * cdf_span_);
    }
    case Family::uniform:
        return support_.a + (support_.b - support_.a) * rng.uniform();
    case Family::normal:
        return mu_ + sigma_ * rng.normal();
    }
    return 0.0;
}

double TargetDensity::cdf(double x) const {
    switch (family_) {
    case Family::trunc_normal: {
        if (x <= support_.a) {
            return 0.0;
        }
        if (x >= support_.b) {
            return 1.0;
        }
        return (normal_cdf((x - mu_) / sigma_) - cdf_lo_) / cdf_span_;
    }
    case Family::uniform: {
        if (x <= support_.a) {
            return 0.0;
        }
        if (x >= support_.b) {
            return 1.0;
        }
        return (x - support_.a) / (support_.b - support_.a);
    }
    case Family::normal:
        return normal_cdf((x - mu_) / sigma_);
    }
    return 0.0;
}

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) {
        return "";
    }
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_args(const std::string& body, std::size_t want,
                               const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = strip(item);
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad numeric argument in target spec: " +
                                        spec);
        }
        if (pos != item.size()) {
            throw std::invalid_argument("bad numeric argument in target spec: " +
                                        spec);
        }
        out.push_back(v);
    }
    if (out.size() != want) {
        throw std::invalid_argument("wrong argument count in target spec: " +
                                    spec);
    }
    return out;
}

} // namespace

TargetDensity TargetDensity::parse(const std::string& spec) {
    const std::string s = strip(spec);
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') {
        throw std::invalid_argument("malformed target spec: " + spec);
    }
    const std::string head = lowercase(strip(s.substr(0, open)));
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    if (head == "truncnormal") {
        const auto v = parse_args(body, 4, spec);
        return trunc_normal(v[0], v[1], v[2], v[3]);
    }
    if (head == "uniform") {
        const auto v = parse_args(body, 2, spec);
        return uniform(v[0], v[1]);
    }
    if (head == "normal") {
        const auto v = parse_args(body, 2, spec);
        return normal(v[0], v[1]);
    }
    throw std::invalid_argument("unknown target family: " + spec);
}

double log_density_joint(const ProductTarget& t, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != t.d) {
        throw std::invalid_argument("log_density_joint: dimension mismatch");
    }
    double sum = 0.0;
    for (const double xi : x) {
        const double li = t.component.log_f(xi);
        if (li == kNegInf) {
            return kNegInf;
        }
        sum += li;
    }
    return sum;
}

double grad_log_component(const TargetDensity& t, double x) {
    return t.dlog_f(x);
}

std::vector<double> sample_stationary(const ProductTarget& t, Rng& rng) {
    std::vector<double> x(t.d);
    for (auto& xi : x) {
        xi = t.component.sample(rng);
    }
    return x;
}

} // namespace optscale
