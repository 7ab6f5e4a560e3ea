#include "srlnc/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace srlnc {

namespace {

void check_family(const double* p, int n, const char* tag) {
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        if (p[i] < -ChannelSpec::kProbTol)
            throw ChannelError(std::string("negative probability in ") + tag);
        sum += p[i];
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw ChannelError(std::string("probabilities of ") + tag + " do not sum to 1");
}

}  // namespace

void ChannelSpec::validate() const {
    check_family(s_joint.data(), 8, "s-PEC");
    check_family(r_joint.data(), 4, "r-PEC");
}

ChannelSpec ChannelSpec::independent(double s_d1, double s_d2, double s_r,
                                     double r_d1, double r_d2) {
    ChannelSpec ch;
    const double sm[3] = {s_d1, s_d2, s_r};
    for (int mask = 0; mask < 8; ++mask) {
        double p = 1.0;
        for (int k = 0; k < 3; ++k) p *= (mask >> k & 1) ? sm[k] : 1.0 - sm[k];
        ch.s_joint[mask] = p;
    }
    const double rm[2] = {r_d1, r_d2};
    for (int mask = 0; mask < 4; ++mask) {
        double p = 1.0;
        for (int k = 0; k < 2; ++k) p *= (mask >> k & 1) ? rm[k] : 1.0 - rm[k];
        ch.r_joint[mask] = p;
    }
    ch.validate();
    return ch;
}

double compat_prob(const ChannelSpec& ch, const CompatQuery& q) {
    const bool src = q.sender == Sender::source;
    for (const Term& t : q.terms) {
        int seen = 0;
        for (const Lit& l : t) {
            if (!src && l.node == R)
                throw ChannelError("r-literal in a relay-PEC query");
            if (seen & (1 << l.node))
                throw ChannelError("repeated node within a query term");
            seen |= 1 << l.node;
        }
    }
    const int outcomes = src ? 8 : 4;
    const double* joint = src ? ch.s_joint.data() : ch.r_joint.data();
    double prob = 0;
    for (int mask = 0; mask < outcomes; ++mask) {
        bool compatible = false;
        for (const Term& t : q.terms) {
            bool ok = true;
            for (const Lit& l : t)
                if (bool(mask >> l.node & 1) == l.neg) {
                    ok = false;
                    break;
                }
            if (ok) {
                compatible = true;
                break;
            }
        }
        if (compatible) prob += joint[mask];
    }
    return prob;
}

bool is_strong_relaying(const ChannelSpec& ch) {
    // T over non-empty subsets of {d1,d2}; comparisons are strict.
    for (int t = 1; t < 4; ++t) {
        Term term;
        for (int k = 0; k < 2; ++k) term.push_back({Node(k), !(t >> k & 1)});
        double pr = compat_prob(ch, {Sender::relay, {term}});
        double ps = compat_prob(ch, {Sender::source, {term}});
        if (!(pr > ps)) return false;
    }
    return true;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

ChannelSpec sample_once(std::mt19937_64& rng, SampleMode mode) {
    if (mode == SampleMode::uniform_independent) {
        return ChannelSpec::independent(uniform01(rng), uniform01(rng), uniform01(rng),
                                        uniform01(rng), uniform01(rng));
    }
    // Flat Dirichlet over each joint table via normalized exponentials.
    ChannelSpec ch;
    auto fill = [&](double* p, int n) {
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            double u = uniform01(rng);
            p[i] = -std::log(u > 0 ? u : 1e-300);
            sum += p[i];
        }
        for (int i = 0; i < n; ++i) p[i] /= sum;
    };
    fill(ch.s_joint.data(), 8);
    fill(ch.r_joint.data(), 4);
    return ch;
}

}  // namespace

ChannelSpec sample_channel(std::mt19937_64& rng, SampleMode mode, SampleConstraint constraint) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        ChannelSpec ch = sample_once(rng, mode);
        if (constraint == SampleConstraint::none || is_strong_relaying(ch)) return ch;
    }
    throw ChannelError("strong-relaying rejection budget exceeded");
}

namespace {

const char* const kSubsetKeys3[8] = {"-",  "d1",   "d2",   "d1,d2",
                                     "r",  "d1,r", "d2,r", "d1,d2,r"};
const char* const kSubsetKeys2[4] = {"-", "d1", "d2", "d1,d2"};

void parse_joint(const nlohmann::json& j, double* out, int n, const char* const* keys,
                 const char* tag) {
    for (int mask = 0; mask < n; ++mask) {
        if (!j.contains(keys[mask]))
            throw ChannelError(std::string("missing subset entry '") + keys[mask] + "' in joint." + tag);
        out[mask] = j.at(keys[mask]).get<double>();
    }
}

}  // namespace

ChannelSpec load_channel(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ChannelError(std::string("channel document parse error: ") + e.what());
    }
    ChannelSpec ch;
    if (j.contains("joint")) {
        parse_joint(j.at("joint").at("s"), ch.s_joint.data(), 8, kSubsetKeys3, "s");
        parse_joint(j.at("joint").at("r"), ch.r_joint.data(), 4, kSubsetKeys2, "r");
    } else if (j.contains("marginals")) {
        if (!j.value("independent", false))
            throw ChannelError("marginal form requires \"independent\": true");
        const auto& s = j.at("marginals").at("s");
        const auto& r = j.at("marginals").at("r");
        ch = ChannelSpec::independent(s.at("d1").get<double>(), s.at("d2").get<double>(),
                                      s.at("r").get<double>(), r.at("d1").get<double>(),
                                      r.at("d2").get<double>());
    } else {
        throw ChannelError("channel document needs either \"joint\" or \"marginals\"");
    }
    ch.validate();
    return ch;
}

ChannelSpec load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ChannelError("cannot open channel file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_channel(ss.str());
}

std::string channel_to_json(const ChannelSpec& ch) {
    nlohmann::json s, r;
    for (int mask = 0; mask < 8; ++mask) s[kSubsetKeys3[mask]] = ch.s_joint[mask];
    for (int mask = 0; mask < 4; ++mask) r[kSubsetKeys2[mask]] = ch.r_joint[mask];
    nlohmann::json j;
    j["joint"]["s"] = s;
    j["joint"]["r"] = r;
    return j.dump();
}

}  // namespace srlnc
