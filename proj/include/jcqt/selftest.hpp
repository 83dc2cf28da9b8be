#pragma once

#include <jcqt/channel.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace jcqt {

struct SelfTestCheck {
    std::string name;
    bool passed = false;
    double residual = 0.0;   // largest deviation observed
    double tolerance = 0.0;
    std::string note;
};

struct SelfTestReport {
    std::vector<SelfTestCheck> checks;

    bool all_passed() const;
    const SelfTestCheck* find(const std::string& name) const;
};

/// Source of channel coefficients. Swappable so that mutation tests can
/// feed deliberately corrupted coefficients through every check.
using AlphaProvider = std::function<AlphaSet<double>(const ChannelParams&)>;

AlphaProvider default_alpha_provider();

/// Runs the invariant and oracle cross-checks with fixed seeds.
SelfTestReport run_self_test(const AlphaProvider& alphas = default_alpha_provider());

void print_report(const SelfTestReport& report, std::ostream& os);

}  // namespace jcqt
