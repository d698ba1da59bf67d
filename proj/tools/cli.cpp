#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "stimpdc/cloning.hpp"
#include "stimpdc/format.hpp"
#include "stimpdc/overlap.hpp"
#include "stimpdc/spectrum.hpp"

namespace stimpdc::cli {

namespace {

ModeSpec make_pump(const std::string& kind, int p, int l, double waist) {
    if (kind == "gauss") return ModeSpec::gaussian(waist);
    if (kind == "lg") return ModeSpec::lg(p, l, waist);
    throw std::invalid_argument("unknown pump '" + kind + "' (expected gauss or lg)");
}

std::uint64_t budget_for(Arithmetic mode, unsigned long long exact_budget) {
    switch (mode) {
        case Arithmetic::exact: return std::numeric_limits<std::uint64_t>::max();
        case Arithmetic::floating: return 0;
        case Arithmetic::automatic: break;
    }
    return exact_budget;
}

std::string cell_text(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<bool>(cell) ? "true" : "false";
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

void add_spectrum_rows(Table& table, const SpectrumTable& raw) {
    const auto normalized = raw.normalize();
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        const auto& row = raw.rows[i];
        table.rows.push_back({static_cast<long long>(row.ell_signal), static_cast<long long>(row.ell_idler),
                              row.weight, normalized.rows[i].weight, std::string(to_string(row.method))});
    }
}

PumpComponent parse_component(const std::string& text, double waist) {
    std::istringstream in(text);
    std::string p, l, w;
    if (!std::getline(in, p, ',') || !std::getline(in, l, ',') || !std::getline(in, w) || w.find(',') != std::string::npos)
        throw std::invalid_argument("pump component '" + text + "' is not of the form p,l,weight");
    try {
        return {ModeSpec::lg(std::stoi(p), std::stoi(l), waist), Complex(std::stod(w), 0.0)};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("pump component '" + text + "' is not of the form p,l,weight");
    }
}

}  // namespace

Table run_overlap(const OverlapOptions& o) {
    if (o.ell_max < 0) throw std::invalid_argument("overlap: --lmax must be >= 0");
    const ModeSpec pump = make_pump(o.pump, o.pump_p, o.pump_l, o.waist);
    Table table;
    table.command = "overlap";
    table.columns = {"ell_signal", "ell_idler", "method", "value", "error_estimate", "quadrature", "closed_form", "agree"};
    int failures = 0;
    int disagreements = 0;
    for (int ls = -o.ell_max; ls <= o.ell_max; ++ls) {
        const auto signal = ModeSpec::lg(0, ls, o.waist);
        const auto idler = ModeSpec::lg(0, pump.total_charge() - ls, o.waist);
        double quad = 0.0;
        double quad_error = 0.0;
        bool failed = false;
        try {
            const auto q = triple_overlap_quadrature(pump, signal, idler, o.tol);
            quad = q.value.real();
            quad_error = q.error_estimate;
        } catch (const QuadratureError& e) {
            quad = e.estimate().real();
            quad_error = e.error_bound();
            failed = true;
            ++failures;
        }
        const auto closed = closed_form(pump, signal, idler);
        Cell closed_cell = std::string();
        Cell agree_cell = std::string();
        std::string method = failed ? "failed" : to_string(OverlapMethod::quadrature);
        double value = quad;
        if (closed) {
            const double c = closed->value.real();
            const bool agree = !failed && (quad == c || std::abs(quad - c) <= kMethodAgreement * std::abs(c));
            if (!agree) ++disagreements;
            closed_cell = c;
            agree_cell = agree;
            method = to_string(OverlapMethod::closed_form);
            value = c;
        }
        table.rows.push_back({static_cast<long long>(ls), static_cast<long long>(idler.ell), method, value, quad_error,
                              quad, closed_cell, agree_cell});
    }
    table.summary = {{"pump", pump.to_string()},
                     {"quadrature_failures", static_cast<long long>(failures)},
                     {"method_disagreements", static_cast<long long>(disagreements)}};
    table.passed = failures == 0 && disagreements == 0;
    return table;
}

Table run_spectrum(const SpectrumOptions& o) {
    if (o.ell_max < 1) throw std::invalid_argument("spectrum: empty window, --lmax must be >= 1");
    Table table;
    table.command = "spectrum";
    table.columns = {"ell_signal", "ell_idler", "weight", "normalized", "method"};
    SpectrumTable raw;
    if (o.basis == "lg") {
        raw = oam_spectrum(make_pump(o.pump, o.pump_p, o.pump_l, o.waist), o.ell_max, o.tol);
    } else if (o.basis == "mlg") {
        raw = mlg_spectrum(o.ring_charge, o.waist, o.ell_max);
        table.notes.push_back("MLG rows are labelled by the carried charge l*N for N = -lmax..lmax");
    } else {
        throw std::invalid_argument("spectrum: unknown basis '" + o.basis + "' (expected lg or mlg)");
    }
    add_spectrum_rows(table, raw);
    table.summary = {{"basis", o.basis}, {"flatness", flatness_metric(raw)}};
    return table;
}

Table run_clone(const CloneOptions& o) {
    const std::uint64_t budget = budget_for(o.arithmetic, o.exact_budget);
    const auto records = o.grid ? run_grid(o.n_max, o.m_max, o.dimensions, budget)
                                : std::vector<ComparisonRecord>{state_vs_formula_report({o.n, o.m, o.d}, budget)};
    Table table;
    table.command = "clone";
    table.columns = {"N", "M", "d", "F_state", "F_counting", "F_formula", "verdict", "warning"};
    long long failed = 0;
    for (const auto& r : records) {
        const std::string state = r.state.exact ? rational_string(*r.state.exact) : format_double(r.state.value);
        table.rows.push_back({static_cast<long long>(r.scenario.n_initial), static_cast<long long>(r.scenario.m_final),
                              static_cast<long long>(r.scenario.dimension), state, rational_string(r.counting),
                              rational_string(r.formula), std::string(to_string(r.verdict)), r.warning});
        if (!r.passed() || !r.state.normalized || !r.state.pair_conjugate) ++failed;
    }
    table.summary = {{"scenarios", static_cast<long long>(records.size())}, {"failed", failed}};
    table.passed = failed == 0;
    return table;
}

Table run_state(const StateOptions& o) {
    if (o.n < 0) throw std::invalid_argument("state: --n must be >= 0");
    const auto window = ModeWindow::for_dimension(o.d);
    const auto target = ModeLabel::signal(o.target);
    const bool exact = count_weak_compositions(o.q, o.d) <= budget_for(o.arithmetic, o.exact_budget);
    const Configuration seed_config = Configuration{}.with_added(target, o.n);

    Table table;
    table.command = "state";
    table.columns = {"configuration", "amplitude", "probability"};
    bool normalized = false;
    bool pair_conjugate = false;
    std::string expectation;
    auto emit = [&](const auto& state, auto probability_text) {
        using Traits = typename std::decay_t<decltype(state)>::Traits;
        for (const auto& [config, amp] : state.terms())
            table.rows.push_back({config.to_string(), Traits::format(amp), probability_text(amp)});
        normalized = state.is_normalized();
        pair_conjugate = satisfies_pair_conjugation(state, seed_config);
    };
    if (exact) {
        const auto state = apply_downconversion_power(ExactFockState::number_state(target, o.n), o.q, window);
        emit(state, [](const SurdSum& a) { return rational_string((a * a).rational_value()); });
        expectation = rational_string(number_expectation(state, target).rational_value());
    } else {
        const auto state = apply_downconversion_power(FloatFockState::number_state(target, o.n), o.q, window);
        emit(state, [](const Complex& a) { return format_double(std::norm(a)); });
        expectation = format_double(number_expectation(state, target));
    }
    table.summary = {{"arithmetic", std::string(exact ? "exact" : "float")},
                     {"terms", static_cast<long long>(table.rows.size())},
                     {"target", target.to_string()},
                     {"target_expectation", expectation},
                     {"normalized", normalized},
                     {"pair_conjugate", pair_conjugate}};
    table.passed = normalized && pair_conjugate;
    return table;
}

Table run_flatten(const FlattenOptions& o) {
    FlatteningStrategy strategy;
    strategy.ell_max = o.ell_max;
    strategy.waist = o.waist;
    strategy.ring_charge = o.ring_charge;
    if (o.strategy == "procrustean") {
        strategy.kind = FlatteningKind::procrustean_filter;
    } else if (o.strategy == "mlg") {
        strategy.kind = FlatteningKind::mlg_basis;
    } else if (o.strategy == "pump") {
        strategy.kind = FlatteningKind::pump_shaping_hook;
        for (const auto& text : o.components) strategy.pump.push_back(parse_component(text, o.waist));
        if (strategy.pump.empty()) strategy.pump.push_back({ModeSpec::gaussian(o.waist), Complex(1.0)});
    } else {
        throw std::invalid_argument("flatten: unknown strategy '" + o.strategy + "' (expected procrustean, mlg or pump)");
    }
    if (o.ell_max < 1) throw std::invalid_argument("flatten: empty window, --lmax must be >= 1");

    const auto report = evaluate_strategy(strategy);
    Table table;
    table.command = "flatten";
    table.columns = {"ell_signal", "ell_idler", "weight", "method", "flatness", "success_probability"};
    for (const auto& row : report.spectrum.rows)
        table.rows.push_back({static_cast<long long>(row.ell_signal), static_cast<long long>(row.ell_idler), row.weight,
                              std::string(to_string(row.method)), report.flatness, report.success_probability});
    table.summary = {{"strategy", o.strategy},
                     {"flatness", report.flatness},
                     {"success_probability", report.success_probability}};
    table.notes = report.notes;
    return table;
}

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + csv_field(table.columns[i]);
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(cell_text(row[i]));
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["command"] = table.command;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json object;
        for (std::size_t i = 0; i < row.size(); ++i) object[table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(object));
    }
    doc["rows"] = std::move(rows);
    auto summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.summary) summary[key] = cell_json(value);
    doc["summary"] = std::move(summary);
    doc["notes"] = table.notes;
    doc["passed"] = table.passed;
    return doc.dump(2) + "\n";
}

std::string render(const Table& table, OutputFormat format) {
    return format == OutputFormat::csv ? render_csv(table) : render_json(table);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        file << content;
        file.flush();
        if (!file) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stimulated down-conversion in OAM modes: overlaps, spectra, cloning fidelities."};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option defaults; flags on the command line take precedence");

    OutputFormat format = OutputFormat::csv;
    std::string output;
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    const std::map<std::string, Arithmetic> arithmetics{
        {"auto", Arithmetic::automatic}, {"exact", Arithmetic::exact}, {"float", Arithmetic::floating}};
    app.add_option("--format", format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("-o,--output", output,
                   std::string("Output file; defaults to $") + kOutputDirVariable + "/<command>.<format> or stdout");

    OverlapOptions ov;
    auto* overlap = app.add_subcommand("overlap", "Triple-overlap coefficients N(pump; LG_{0,l}, LG_{0,lp-l})");
    overlap->add_option("--pump", ov.pump, "Pump family: gauss or lg")->check(CLI::IsMember({"gauss", "lg"}))->capture_default_str();
    overlap->add_option("--pump-p", ov.pump_p, "Pump radial index (lg pump)")->check(CLI::NonNegativeNumber);
    overlap->add_option("--pump-l", ov.pump_l, "Pump charge (lg pump)");
    overlap->add_option("--lmax", ov.ell_max, "Signal charges -lmax..lmax")->check(CLI::NonNegativeNumber)->capture_default_str();
    overlap->add_option("--waist", ov.waist, "Beam waist w0")->check(CLI::PositiveNumber)->capture_default_str();
    overlap->add_option("--tol", ov.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber)->capture_default_str();

    SpectrumOptions sp;
    auto* spectrum = app.add_subcommand("spectrum", "OAM spectrum |N|^2 of the emitted pairs");
    spectrum->add_option("--basis", sp.basis, "lg or mlg")->check(CLI::IsMember({"lg", "mlg"}))->capture_default_str();
    spectrum->add_option("--pump", sp.pump, "Pump family for the lg basis: gauss or lg")
        ->check(CLI::IsMember({"gauss", "lg"}))
        ->capture_default_str();
    spectrum->add_option("--pump-p", sp.pump_p, "Pump radial index (lg pump)")->check(CLI::NonNegativeNumber);
    spectrum->add_option("--pump-l", sp.pump_l, "Pump charge (lg pump)");
    spectrum->add_option("--lmax", sp.ell_max, "Largest |l| (lg) or |N| (mlg)")->capture_default_str();
    spectrum->add_option("--l", sp.ring_charge, "MLG ring charge")->capture_default_str();
    spectrum->add_option("--waist", sp.waist, "Beam waist w0")->check(CLI::PositiveNumber)->capture_default_str();
    spectrum->add_option("--tol", sp.tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber)->capture_default_str();

    CloneOptions cl;
    auto* clone = app.add_subcommand("clone", "State fidelity vs counting sum vs optimal bound");
    clone->add_option("--n", cl.n, "Initial copies N")->capture_default_str();
    clone->add_option("--m", cl.m, "Final copies M")->capture_default_str();
    clone->add_option("--d", cl.d, "Dimension d (even)")->capture_default_str();
    clone->add_flag("--grid", cl.grid, "Run every N <= n-max, N <= M <= m-max, d in --dims");
    clone->add_option("--n-max", cl.n_max, "Grid bound on N")->check(CLI::PositiveNumber)->capture_default_str();
    clone->add_option("--m-max", cl.m_max, "Grid bound on M")->check(CLI::PositiveNumber)->capture_default_str();
    clone->add_option("--dims", cl.dimensions, "Grid dimensions")->delimiter(',')->capture_default_str();
    clone->add_option("--arithmetic", cl.arithmetic, "auto, exact or float")
        ->transform(CLI::CheckedTransformer(arithmetics, CLI::ignore_case));
    clone->add_option("--exact-budget", cl.exact_budget, "auto switches to float above this many compositions")
        ->capture_default_str();

    StateOptions st;
    auto* state = app.add_subcommand("state", "Output Fock state (1/q!) B^q |n> over a d-mode window");
    state->add_option("--n", st.n, "Seed photons in the target mode")->capture_default_str();
    state->add_option("--q", st.q, "Down-converted pairs")->capture_default_str();
    state->add_option("--d", st.d, "Dimension d (even)")->capture_default_str();
    state->add_option("--target", st.target, "Target signal charge")->capture_default_str();
    state->add_option("--arithmetic", st.arithmetic, "auto, exact or float")
        ->transform(CLI::CheckedTransformer(arithmetics, CLI::ignore_case));
    state->add_option("--exact-budget", st.exact_budget, "auto switches to float above this many compositions")
        ->capture_default_str();

    FlattenOptions fl;
    auto* flatten = app.add_subcommand("flatten", "Evaluate a spectrum-flattening strategy");
    flatten->add_option("--strategy", fl.strategy, "procrustean, mlg or pump")
        ->check(CLI::IsMember({"procrustean", "mlg", "pump"}))
        ->capture_default_str();
    flatten->add_option("--lmax", fl.ell_max, "Window half-width")->capture_default_str();
    flatten->add_option("--waist", fl.waist, "Beam waist w0")->check(CLI::PositiveNumber)->capture_default_str();
    flatten->add_option("--l", fl.ring_charge, "MLG ring charge")->capture_default_str();
    flatten->add_option("--component", fl.components, "Pump component p,l,weight (repeatable; weights normalised)");

    for (auto* sub : {overlap, spectrum, clone, state, flatten}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Table table;
    try {
        if (overlap->parsed()) table = run_overlap(ov);
        else if (spectrum->parsed()) table = run_spectrum(sp);
        else if (clone->parsed()) table = run_clone(cl);
        else if (state->parsed()) table = run_state(st);
        else table = run_flatten(fl);
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string content = render(table, format);
    const std::string extension = format == OutputFormat::csv ? ".csv" : ".json";
    std::filesystem::path destination = output;
    if (destination.empty()) {
        if (const char* dir = std::getenv(kOutputDirVariable); dir != nullptr && *dir != '\0')
            destination = std::filesystem::path(dir) / (table.command + extension);
    }
    try {
        if (destination.empty())
            out << content;
        else
            write_atomic(destination, content);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (const auto& [key, value] : table.summary) err << "# " << key << " = " << cell_text(value) << "\n";
    for (const auto& note : table.notes) err << "# note: " << note << "\n";
    if (!table.passed) err << "# one or more checks failed\n";
    return table.passed ? 0 : 1;
}

}  // namespace stimpdc::cli
