#include "strobe/probe.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace strobe {

void validate(const NetworkConfig& config) {
    if (config.n_nodes < 2)
        throw ConfigInvalid("n_nodes must be >= 2 (a single node has no relative phase to estimate), got " +
                            std::to_string(config.n_nodes));
    if (config.couplings.size() != config.n_nodes)
        throw ConfigInvalid("couplings must have exactly n_nodes entries: expected " +
                            std::to_string(config.n_nodes) + ", got " +
                            std::to_string(config.couplings.size()));
    if (config.drivings.size() != config.n_nodes)
        throw ConfigInvalid("drivings must have exactly n_nodes entries: expected " +
                            std::to_string(config.n_nodes) + ", got " +
                            std::to_string(config.drivings.size()));
    if (config.lambda == config.lambda_prime)
        throw ConfigInvalid("lambda must differ from lambda_prime (equal eigenvalues zero every beta_j "
                            "and make the Fisher matrix singular)");
}

PhaseSet make_phase_set(CaseId case_id, const Eigen::VectorXd& betas,
                        const Eigen::VectorXd& phis) {
    if (betas.size() != phis.size())
        throw DimensionMismatch("betas and phis must have equal length, got " +
                                std::to_string(betas.size()) + " and " +
                                std::to_string(phis.size()));
    if (betas.size() < 1)
        throw DimensionMismatch("a PhaseSet needs at least one relative parameter (N >= 2)");
    for (Eigen::Index j = 0; j < betas.size(); ++j)
        if (betas(j) == 0.0)
            throw SingularBeta("beta_" + std::to_string(j + 2) +
                               " = 0: the corresponding parameter is invisible to the probe");
    if (case_id == CaseId::Case1)
        for (Eigen::Index j = 1; j < betas.size(); ++j)
            if (betas(j) != betas(0))
                throw CaseConditionViolated("Case1 requires node-independent beta (all entries equal)");
    PhaseSet set;
    set.case_id = case_id;
    set.betas = betas;
    set.phis = phis;
    return set;
}

PhaseSet case_phases(const NetworkConfig& config, CaseId case_id) {
    validate(config);
    const int n = config.n_nodes;
    const double dl = config.lambda - config.lambda_prime;
    const double sl = config.lambda + config.lambda_prime;

    PhaseSet set;
    set.case_id = case_id;
    set.betas.resize(n - 1);
    set.phis.resize(n - 1);

    if (case_id == CaseId::Case1) {
        // Equal couplings k; the drivings carry the unknowns.
        const double k = config.couplings(0);
        for (int j = 1; j < n; ++j)
            if (config.couplings(j) != k)
                throw CaseConditionViolated(
                    "Case1 requires all couplings equal (coupling " + std::to_string(j + 1) +
                    " differs from coupling 1); unequal couplings are rejected, not averaged");
        const double beta = 4.0 * std::numbers::pi * k * dl;
        if (beta == 0.0)
            throw SingularBeta("Case1 beta = 4*pi*k*(lambda - lambda') vanished (k = 0?)");
        for (int j = 1; j < n; ++j) {
            set.betas(j - 1) = beta;
            set.phis(j - 1) = config.drivings(0) - config.drivings(j);
        }
    } else {
        // Undriven nodes; the couplings carry the unknowns.
        for (int j = 0; j < n; ++j)
            if (config.drivings(j) != 0.0)
                throw CaseConditionViolated("Case2 requires all drivings zero (driving " +
                                            std::to_string(j + 1) + " is nonzero)");
        set.k_plus.resize(n - 1);
        for (int j = 1; j < n; ++j) {
            const double k_plus = config.couplings(0) + config.couplings(j);
            const double beta = 2.0 * std::numbers::pi * k_plus * (-dl) * sl;
            if (beta == 0.0)
                throw SingularBeta(
                    "Case2 beta_j = 2*pi*(k_1+k_j)*(lambda'-lambda)*(lambda+lambda') vanished at node " +
                    std::to_string(j + 1) +
                    (sl == 0.0 ? " (lambda + lambda' = 0, e.g. a spin-1/2 probe)" : " (k_1 + k_j = 0)"));
            set.k_plus(j - 1) = k_plus;
            set.betas(j - 1) = beta;
            set.phis(j - 1) = config.couplings(0) - config.couplings(j);
        }
    }
    return set;
}

namespace {

// One parsed right-hand side: either a scalar or a bracketed list.
struct ConfigValue {
    bool is_list = false;
    double scalar = 0.0;
    std::vector<double> list;
};

double parse_number(const std::string& token, const std::string& key,
                    const std::string& origin) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ConfigInvalid(origin + ": value of '" + key + "' is not a number: '" + token + "'");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size())
        throw ConfigInvalid(origin + ": trailing garbage after number in '" + key + "': '" + token + "'");
    return value;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

NetworkConfig parse_network_config(const std::string& text, const std::string& origin) {
    std::map<std::string, ConfigValue> values;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid(origin + ":" + std::to_string(line_no) +
                                ": expected 'key = value', got '" + line + "'");
        const std::string key = trimmed(line.substr(0, eq));
        std::string rhs = trimmed(line.substr(eq + 1));
        if (key.empty() || rhs.empty())
            throw ConfigInvalid(origin + ":" + std::to_string(line_no) + ": empty key or value");
        if (values.count(key))
            throw ConfigInvalid(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");

        ConfigValue value;
        if (rhs.front() == '[') {
            if (rhs.back() != ']')
                throw ConfigInvalid(origin + ":" + std::to_string(line_no) +
                                    ": unterminated list for '" + key + "'");
            value.is_list = true;
            std::string body = rhs.substr(1, rhs.size() - 2);
            std::istringstream items(body);
            std::string item;
            while (std::getline(items, item, ',')) {
                item = trimmed(item);
                if (item.empty())
                    throw ConfigInvalid(origin + ":" + std::to_string(line_no) +
                                        ": empty element in list '" + key + "'");
                value.list.push_back(parse_number(item, key, origin));
            }
            if (value.list.empty())
                throw ConfigInvalid(origin + ":" + std::to_string(line_no) +
                                    ": list '" + key + "' has no elements");
        } else {
            value.scalar = parse_number(rhs, key, origin);
        }
        values.emplace(key, std::move(value));
    }

    auto take_scalar = [&](const std::string& key, bool required, double fallback) {
        auto it = values.find(key);
        if (it == values.end()) {
            if (required) throw ConfigInvalid(origin + ": missing required key '" + key + "'");
            return fallback;
        }
        if (it->second.is_list)
            throw ConfigInvalid(origin + ": key '" + key + "' must be a scalar, not a list");
        double v = it->second.scalar;
        values.erase(it);
        return v;
    };
    auto take_list = [&](const std::string& key) {
        auto it = values.find(key);
        if (it == values.end())
            throw ConfigInvalid(origin + ": missing required key '" + key + "'");
        if (!it->second.is_list)
            throw ConfigInvalid(origin + ": key '" + key + "' must be a bracketed list");
        std::vector<double> v = std::move(it->second.list);
        values.erase(it);
        return v;
    };

    NetworkConfig config;
    const double n_nodes = take_scalar("n_nodes", true, 0.0);
    if (n_nodes != std::floor(n_nodes))
        throw ConfigInvalid(origin + ": n_nodes must be an integer");
    config.n_nodes = static_cast<int>(n_nodes);
    config.lambda = take_scalar("lambda", true, 0.0);
    config.lambda_prime = take_scalar("lambda_prime", true, 0.0);
    const auto couplings = take_list("couplings");
    const auto drivings = take_list("drivings");
    config.couplings = Eigen::Map<const Eigen::VectorXd>(couplings.data(),
                                                         static_cast<Eigen::Index>(couplings.size()));
    config.drivings = Eigen::Map<const Eigen::VectorXd>(drivings.data(),
                                                        static_cast<Eigen::Index>(drivings.size()));
    config.alpha = {take_scalar("alpha_re", false, 0.0), take_scalar("alpha_im", false, 0.0)};

    if (!values.empty())
        throw ConfigInvalid(origin + ": unknown key '" + values.begin()->first + "'");
    validate(config);
    return config;
}

NetworkConfig load_network_config(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw ConfigInvalid("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_network_config(buffer.str(), path);
}

} // namespace strobe
