#include <hypertower/cli.hpp>

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <hypertower/errors.hpp>
#include <hypertower/json_io.hpp>
#include <hypertower/krasner.hpp>
#include <hypertower/laws.hpp>
#include <hypertower/limit.hpp>
#include <hypertower/tower.hpp>

namespace hypertower::cli
{

namespace
{

using json = nlohmann::json;

struct options {
    std::string field = "rational";
    std::uint64_t p = 5;
    long gamma = 0;
    long from = 0;
    long to = 0;
    std::string x;
    std::string y;
    std::size_t digits = 8;
    std::string ext = "quadratic";
    std::string suite;
    std::optional<std::uint64_t> seed;
    std::size_t samples = 200;
    long height = 50;
    std::string op;
    std::string lhs;
    std::string rhs;
};

struct law_failure {
    json document;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag)
{
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("HYPERTOWER_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw std::invalid_argument(std::string("HYPERTOWER_SEED is not an unsigned integer: '") + env + "'");
    }
    return 0;
}

json field_config(const options &o)
{
    return {{"field", o.field}, {"p", o.p}};
}

json cmd_coset(const options &o, json &config)
{
    const auto d = json_io::parse_descriptor(o.field, o.p);
    config = field_config(o);
    config["gamma"] = o.gamma;
    config["x"] = o.x;
    const auto c = krasner::coset_of(json_io::parse_element(d, o.x), o.gamma);
    json out{{"coset", json_io::to_json(c)}, {"value", json_io::to_json(c.value())}};
    if (const auto key = krasner::canonical_form(c)) {
        out["canonical"] = {{"valuation", key->valuation}, {"residue", json_io::to_json(key->residue)}};
    }
    return out;
}

json cmd_hyperadd(const options &o, json &config)
{
    const auto d = json_io::parse_descriptor(o.field, o.p);
    config = field_config(o);
    config["gamma"] = o.gamma;
    config["x"] = o.x;
    config["y"] = o.y;
    const auto a = krasner::coset_of(json_io::parse_element(d, o.x), o.gamma);
    const auto b = krasner::coset_of(json_io::parse_element(d, o.y), o.gamma);
    const auto s = krasner::hyperadd(a, b);
    auto out = json_io::to_json(s);
    out["values"] = json_io::to_json(krasner::hypersum_value_set(s));
    return out;
}

json cmd_project(const options &o, json &config)
{
    const auto d = json_io::parse_descriptor(o.field, o.p);
    config = field_config(o);
    config["from"] = o.from;
    config["to"] = o.to;
    config["x"] = o.x;
    const auto c = krasner::coset_of(json_io::parse_element(d, o.x), o.from);
    return {{"from", json_io::to_json(c)}, {"to", json_io::to_json(tower::project(c, o.to))}};
}

json cmd_expand(const options &o, json &config)
{
    const auto d = json_io::parse_descriptor(o.field, o.p);
    config = field_config(o);
    config["x"] = o.x;
    config["digits"] = o.digits;
    return json_io::to_json(oracle_expand(json_io::parse_element(d, o.x), o.digits));
}

json cmd_embed(const options &o, json &config)
{
    if (o.ext != "quadratic") {
        throw std::invalid_argument("only --ext quadratic is supported");
    }
    const auto d = field_descriptor::quadratic(o.p);
    config = {{"ext", o.ext}, {"p", o.p}, {"x", o.x.empty() ? "alpha" : o.x}, {"digits", o.digits}};
    const auto x = o.x.empty() ? field_element::generator(d) : json_io::parse_element(d, o.x);
    const auto e = limit::sigma_embed(x, limit::hensel_finder(d));
    return {{"x", json_io::to_json(x)},
            {"valuation", json_io::to_json(e.valuation())},
            {"approximation", json_io::to_json(limit::to_approximation(e, o.digits))}};
}

json cmd_laws(const options &o, json &config)
{
    const laws::config cfg{resolve_seed(o.seed), o.samples, o.height};
    config = {{"suite", o.suite}, {"seed", cfg.seed}, {"samples", cfg.samples}, {"height", cfg.height}};
    const auto report = laws::run_suite(o.suite, cfg).to_json();
    if (!report.at("pass").get<bool>()) {
        throw law_failure{report};
    }
    return report;
}

arith_op parse_op(const std::string &op)
{
    if (op == "add") {
        return arith_op::add;
    }
    if (op == "mul") {
        return arith_op::mul;
    }
    if (op == "neg") {
        return arith_op::neg;
    }
    if (op == "inv") {
        return arith_op::inv;
    }
    throw std::invalid_argument("unknown operation '" + op + "' (add, mul, neg, inv)");
}

json cmd_limit_arith(const options &o, json &config)
{
    const auto d = json_io::parse_descriptor(o.field, o.p);
    const auto op = parse_op(o.op);
    const bool binary = op == arith_op::add || op == arith_op::mul;
    if (binary && o.rhs.empty()) {
        throw std::invalid_argument("--rhs is required for " + o.op);
    }
    config = field_config(o);
    config["op"] = o.op;
    config["lhs"] = o.lhs;
    if (binary) {
        config["rhs"] = o.rhs;
    }
    config["digits"] = o.digits;
    const auto a = limit::from_field(json_io::parse_element(d, o.lhs));
    std::optional<limit::coherent_element> b;
    if (binary) {
        b = limit::from_field(json_io::parse_element(d, o.rhs));
    }
    const auto r = limit::limit_arith(op, a, b, static_cast<long>(o.digits));
    json out{{"ledger", r.ledger.to_json()}, {"zero", r.value.is_zero()}};
    out["approximation"] = json_io::to_json(limit::to_approximation(r.value, o.digits));
    return out;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Krasner gamma-hyperfields, their projective tower, and the completion as its limit"};
    app.require_subcommand(1);
    options o;

    const auto add_field = [&o](CLI::App *sub) {
        sub->add_option("--field", o.field, "rational | function | quadratic")
            ->check(CLI::IsMember({"rational", "function", "quadratic"}));
        sub->add_option("--p", o.p, "prime");
    };

    auto *coset = app.add_subcommand("coset", "class [x]_gamma");
    add_field(coset);
    coset->add_option("--gamma", o.gamma, "level")->required();
    coset->add_option("--x", o.x, "element: rational or inline JSON")->required();

    auto *hyperadd = app.add_subcommand("hyperadd", "[x]_gamma + [y]_gamma as a ball");
    add_field(hyperadd);
    hyperadd->add_option("--gamma", o.gamma, "level")->required();
    hyperadd->add_option("--x", o.x)->required();
    hyperadd->add_option("--y", o.y)->required();

    auto *project = app.add_subcommand("project", "rho_{from,to}([x]_from)");
    add_field(project);
    project->add_option("--from", o.from, "upper level")->required();
    project->add_option("--to", o.to, "lower level")->required();
    project->add_option("--x", o.x)->required();

    auto *expand = app.add_subcommand("expand", "p-adic / t-adic digits of x");
    add_field(expand);
    expand->add_option("--x", o.x)->required();
    expand->add_option("--digits", o.digits)->check(CLI::PositiveNumber);

    auto *embed = app.add_subcommand("embed", "digits of sigma(x) for x in Q(alpha), alpha^2 = 1 + p");
    embed->add_option("--ext", o.ext)->check(CLI::IsMember({"quadratic"}));
    embed->add_option("--p", o.p);
    embed->add_option("--x", o.x, "element of Q(alpha), default alpha");
    embed->add_option("--digits", o.digits)->check(CLI::PositiveNumber);

    auto *law = app.add_subcommand("laws", "run a law suite");
    law->add_option("--suite", o.suite)->required()->check(CLI::IsMember(laws::suite_names()));
    law->add_option("--seed", o.seed, "RNG seed (default: HYPERTOWER_SEED or 0)");
    law->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    law->add_option("--height", o.height)->check(CLI::PositiveNumber);

    auto *arith = app.add_subcommand("limit-arith", "arithmetic in the completion with a precision ledger");
    add_field(arith);
    arith->add_option("--op", o.op)->required()->check(CLI::IsMember({"add", "mul", "neg", "inv"}));
    arith->add_option("--lhs", o.lhs)->required();
    arith->add_option("--rhs", o.rhs);
    arith->add_option("--digits", o.digits)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto *sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    json config;
    try {
        json result;
        if (name == "coset") {
            result = cmd_coset(o, config);
        } else if (name == "hyperadd") {
            result = cmd_hyperadd(o, config);
        } else if (name == "project") {
            result = cmd_project(o, config);
        } else if (name == "expand") {
            result = cmd_expand(o, config);
        } else if (name == "embed") {
            result = cmd_embed(o, config);
        } else if (name == "laws") {
            result = cmd_laws(o, config);
        } else {
            result = cmd_limit_arith(o, config);
        }
        out << json{{"command", name}, {"config", config}, {"result", result}}.dump() << '\n';
        return 0;
    } catch (const law_failure &f) {
        out << json{{"command", name}, {"config", config}, {"result", f.document}}.dump() << '\n';
        return 1;
    } catch (const std::invalid_argument &e) {
        err << name << ": " << e.what() << '\n';
    } catch (const std::domain_error &e) {
        err << name << ": " << e.what() << '\n';
    } catch (const std::runtime_error &e) {
        err << name << ": " << e.what() << '\n';
    } catch (const nlohmann::json::exception &e) {
        err << name << ": malformed JSON: " << e.what() << '\n';
    }
    return 2;
}

} // namespace hypertower::cli
