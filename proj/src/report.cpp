#include "asota/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "asota/benchmark_ingest.hpp"
#include "asota/csv.hpp"
#include "asota/errors.hpp"
#include "asota/index_engine.hpp"
#include "asota/svg_figure.hpp"

namespace asota::report {

Command parse_command(const std::string& name) {
    if (name == "ingest") return Command::ingest;
    if (name == "index") return Command::index;
    if (name == "inputs") return Command::inputs;
    if (name == "fit") return Command::fit;
    if (name == "scaling") return Command::scaling;
    if (name == "all") return Command::all;
    throw ManifestError("unknown command '" + name + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

namespace {

using csv::format_double;

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class Emitter {
public:
    explicit Emitter(std::filesystem::path root) : root_(std::move(root)) {
        std::filesystem::create_directories(root_ / "tables");
        std::filesystem::create_directories(root_ / "figures");
    }

    void emit(const std::string& rel_path, const std::string& content) {
        const std::filesystem::path full = root_ / rel_path;
        std::ofstream out(full, std::ios::binary);
        if (!out) throw DataError("cannot write output file: " + full.string());
        out << content;
        files_.push_back({rel_path, fnv1a64(content)});
    }

    ReportBundle finish() {
        std::sort(files_.begin(), files_.end(),
                  [](const BundleFile& a, const BundleFile& b) { return a.rel_path < b.rel_path; });
        std::ostringstream index;
        for (const auto& f : files_) index << hex64(f.checksum) << "  " << f.rel_path << "\n";
        std::ofstream out(root_ / "checksums.txt", std::ios::binary);
        if (!out) throw DataError("cannot write checksum index");
        out << index.str();
        return {root_, files_};
    }

private:
    std::filesystem::path root_;
    std::vector<BundleFile> files_;
};

AnnualSeries scaled(AnnualSeries s, double multiplier) {
    for (auto& [_, v] : s.points) v *= multiplier;
    return s;
}

// ---------------------------------------------------------------------------
// ingest + index
// ---------------------------------------------------------------------------

ingest::IngestResult load_corpus(Manifest& manifest) {
    const auto table = ingest::load_orientation_table(manifest.path_for("metric_orientation"));
    return ingest::parse_records_file(manifest.path_for("benchmark_dump"), table);
}

void emit_ingest(Emitter& em, const ingest::IngestResult& result, std::ostream* log) {
    {
        std::ostringstream tmp;
        tmp << "line_no,reason\n";
        for (const auto& r : result.rejections) {
            std::string reason = r.reason;
            for (char& c : reason)
                if (c == ',') c = ';';
            tmp << r.line_no << "," << reason << "\n";
        }
        em.emit("tables/rejections.csv", tmp.str());
    }
    const auto report = ingest::validate_corpus(result.corpus);
    std::ostringstream v;
    v << "key,value\n";
    v << "combos," << report.counts.combos << "\n";
    v << "combos_ten_plus," << report.counts.with_ten_plus << "\n";
    v << "entries," << report.counts.entries << "\n";
    for (const auto& [bucket, count] : report.buckets) v << "bucket_" << bucket << "," << count << "\n";
    v << "first_date," << (report.first_date ? report.first_date->iso() : "") << "\n";
    v << "last_date," << (report.last_date ? report.last_date->iso() : "") << "\n";
    v << "first_improvement," << (report.first_improvement ? report.first_improvement->iso() : "")
      << "\n";
    v << "reach_" << report.reach_threshold << "_date,"
      << (report.reach_date ? report.reach_date->iso() : "") << "\n";
    v << "duplicate_triples," << report.duplicate_triples << "\n";
    em.emit("tables/validation.csv", v.str());
    if (log) {
        *log << "ingest: " << report.counts.combos << " combos ("
             << report.counts.with_ten_plus << " with >= 10 entries), "
             << result.rejections.size() << " rejected lines\n";
    }
}

void emit_index(Emitter& em, const Manifest& manifest, const ingest::BenchmarkCorpus& corpus,
                std::ostream* log) {
    using namespace index_engine;
    IndexOptions options;
    options.strict_formula = manifest.strict_formula();
    options.asota_threshold = manifest.asota_threshold();

    const DailyScan scan = scan_daily(corpus, options);
    const IndexSet set = compute_indices(scan);

    std::ostringstream table;
    table << "date,n_metrics,ew,aw,ewe,awe,ewr,awr\n";
    for (std::size_t i = 0; i < scan.days.size(); ++i) {
        table << scan.days[i].date.iso() << "," << format_double(set.n_metrics.values[i]) << ","
              << format_double(set.ew.values[i]) << "," << format_double(set.aw.values[i]) << ","
              << format_double(set.ewe.values[i]) << "," << format_double(set.awe.values[i]) << ","
              << format_double(set.ewr.values[i]) << "," << format_double(set.awr.values[i])
              << "\n";
    }
    em.emit("tables/indices.csv", table.str());

    // Increment annotations at the manifest-declared dates. The example is
    // the improving combo with the largest rate; ties go to the smaller id.
    std::ostringstream ann;
    ann << "date,n_improvers,example_combo\n";
    std::vector<svg::Annotation> markers;
    for (std::size_t k = 0; k < manifest.annotation_dates().size(); ++k) {
        const Date d = manifest.annotation_dates()[k];
        std::size_t improvers = 0;
        std::string example;
        if (!scan.empty() && d >= scan.start && d <= scan.days.back().date) {
            const auto& day = scan.days[static_cast<std::size_t>(d - scan.start)];
            improvers = day.improver_count;
            double best_z = 0.0;
            for (const auto& stat : day.stats) {
                if (stat.excluded || stat.z <= 0.0) continue;
                const std::string& id = scan.combo_ids[stat.combo];
                if (stat.z > best_z || (stat.z == best_z && (example.empty() || id < example))) {
                    best_z = stat.z;
                    example = id;
                }
            }
        }
        ann << d.iso() << "," << improvers << "," << example << "\n";
        markers.push_back({fractional_year(d), "(" + std::to_string(k) + ") " +
                                                   std::to_string(improvers)});
    }
    em.emit("tables/annotations.csv", ann.str());

    // finalize_asota throws when the corpus never reaches the threshold or
    // carries no improvements before it; tables above are already on disk.
    const AsotaSeries asota = finalize_asota(set.awr, set.n_metrics, options.asota_threshold);
    std::ostringstream asota_csv;
    asota_csv << "date,asota\n";
    for (std::size_t i = 0; i < asota.values.size(); ++i) {
        asota_csv << asota.start.plus_days(static_cast<long>(i)).iso() << ","
                  << format_double(asota.values[i]) << "\n";
    }
    em.emit("tables/asota.csv", asota_csv.str());

    svg::Figure fig;
    fig.title = "Aggregate state-of-the-art index";
    fig.x_label = "year";
    svg::Panel top;
    top.y_label = "index (log of AWR, base-date = 1)";
    top.y_scale = svg::Scale::linear;
    svg::Series asota_series{"ASOTA", {}, svg::Mark::line};
    for (std::size_t i = 0; i < asota.values.size(); ++i) {
        asota_series.xy.push_back(
            {fractional_year(asota.start.plus_days(static_cast<long>(i))), asota.values[i]});
    }
    top.series.push_back(std::move(asota_series));
    top.annotations = markers;
    svg::Panel bottom;
    bottom.y_label = "task-dataset combinations";
    bottom.y_scale = svg::Scale::log10;
    svg::Series n_series{"N_t", {}, svg::Mark::line};
    for (std::size_t i = 0; i < set.n_metrics.values.size(); ++i) {
        n_series.xy.push_back({fractional_year(set.n_metrics.date_at(i)),
                               std::max(1.0, set.n_metrics.values[i])});
    }
    bottom.series.push_back(std::move(n_series));
    fig.panels = {std::move(top), std::move(bottom)};
    em.emit("figures/fig_index.svg", svg::render(fig));

    if (log) {
        *log << "index: grid " << scan.days.size() << " days, base date "
             << asota.base_date.iso() << ", renewing fallback on " << set.renewing_fallback_days
             << " days\n";
    }
}

// ---------------------------------------------------------------------------
// factor inputs
// ---------------------------------------------------------------------------

struct InputsResult {
    AnnualSeries capital;      // effective stock, FLOP/sec
    AnnualSeries invest_flops; // FLOP/sec
    AnnualSeries invest_real;  // USD at base year
    AnnualSeries delta;        // share
    AnnualSeries price_real;   // USD per FLOP/sec at base year
    AnnualSeries labor;        // persons, interpolated
    AnnualSeries labor_agg;    // persons, interpolated
    factors::WagePremiumResult wages;
    double price_display = 1e-9;   // back to USD per GFLOP/sec
    double capital_display = 1e-15; // FLOP/sec -> PFLOP/sec
};

InputsResult compute_inputs(Manifest& manifest) {
    using namespace factors;
    InputsResult r;
    const int base_year = manifest.deflator_base_year();

    const AnnualSeries invest_nom = scaled(
        load_annual_csv(manifest.path_for("investment_nominal"), Units::usd_nominal),
        manifest.unit("investment_usd_multiplier", 1.0));
    const AnnualSeries netstock_nom = scaled(
        load_annual_csv(manifest.path_for("net_stock_nominal"), Units::usd_nominal),
        manifest.unit("net_stock_usd_multiplier", 1.0));
    const AnnualSeries gdp_deflator =
        load_annual_csv(manifest.path_for("gdp_deflator"), Units::index_points);
    const AnnualSeries cpi = load_annual_csv(manifest.path_for("cpi"), Units::index_points);
    const PriceSeries price_sparse = load_price_csv(manifest.path_for("gflops_price"));

    r.price_display = manifest.unit("price_usd_per_flops_multiplier", 1e-9);
    r.capital_display = manifest.unit("capital_display_multiplier", 1e-15);

    const int y0 = invest_nom.first_year();
    const int y1 = invest_nom.last_year();
    const AnnualSeries price_nominal =
        scaled(interpolate_price(price_sparse, y0, y1), r.price_display);
    r.price_real = deflate(price_nominal, gdp_deflator, base_year);
    r.invest_real = deflate(invest_nom, gdp_deflator, base_year);
    r.invest_flops = investment_flops(r.invest_real, r.price_real);
    r.delta = implicit_depreciation(netstock_nom, invest_nom);

    double k0 = 0.0;
    if (manifest.capital_seed() == CapitalSeed::net_stock) {
        k0 = *netstock_nom.at(y0) / *price_nominal.at(y0);
    } else {
        const double d0 = r.delta.points.begin()->second;
        if (d0 <= 0.0) throw NumericError("steady-state capital seed needs positive depreciation");
        k0 = *r.invest_flops.at(y0) * (1.0 - 0.5 * d0) / d0;
    }
    const AnnualSeries capital = accumulate_capital(r.invest_flops, r.delta, k0, y0);
    r.capital = effective_compute_stock(capital, manifest.scenario());

    r.labor = labor_series(load_annual_csv(manifest.path_for("labor_cs"), Units::persons));
    r.labor_agg =
        labor_series(load_annual_csv(manifest.path_for("labor_aggregate"), Units::persons));
    r.wages = wage_premium(
        scaled(load_annual_csv(manifest.path_for("wage_cs"), Units::usd_nominal),
               manifest.unit("wage_usd_multiplier", 1.0)),
        scaled(load_annual_csv(manifest.path_for("wage_aggregate"), Units::usd_nominal),
               manifest.unit("wage_usd_multiplier", 1.0)),
        cpi, base_year);
    return r;
}

svg::Series to_series(const std::string& label, const AnnualSeries& s, double multiplier = 1.0,
                      svg::Mark mark = svg::Mark::line) {
    svg::Series out{label, {}, mark};
    for (const auto& [year, value] : s.points) {
        out.xy.push_back({static_cast<double>(year), value * multiplier});
    }
    return out;
}

void emit_inputs(Emitter& em, const InputsResult& r, std::ostream* log) {
    std::ostringstream table;
    table << "year,k_flops,i_flops,delta,labor,premium\n";
    for (const auto& [year, k] : r.capital.points) {
        table << year << "," << format_double(k) << ",";
        if (auto v = r.invest_flops.at(year)) table << format_double(*v);
        table << ",";
        if (auto v = r.delta.at(year)) table << format_double(*v);
        table << ",";
        if (auto v = r.labor.at(year)) table << format_double(*v);
        table << ",";
        if (auto v = r.wages.premium.at(year)) table << format_double(*v);
        table << "\n";
    }
    em.emit("tables/factor_inputs.csv", table.str());

    {
        svg::Figure fig;
        fig.title = "Compute capital, labor and compute price";
        fig.x_label = "year";
        svg::Panel panel;
        panel.y_label = "level (log scale)";
        panel.y_scale = svg::Scale::log10;
        panel.series.push_back(to_series("K_FLOP/sec (PFLOP/sec)", r.capital, r.capital_display));
        panel.series.push_back(to_series("L_CS (persons)", r.labor));
        panel.series.push_back(
            to_series("P_FLOP/sec (US$ per GFLOP/sec, real)", r.price_real, 1.0 / r.price_display));
        fig.panels.push_back(std::move(panel));
        em.emit("figures/fig_capital_labor_price.svg", svg::render(fig));
    }
    {
        svg::Figure fig;
        fig.title = "Investment, capital stock and depreciation";
        fig.x_label = "year";
        svg::Panel top;
        top.y_label = "level (log scale)";
        top.y_scale = svg::Scale::log10;
        top.series.push_back(to_series("K_FLOP/sec (PFLOP/sec)", r.capital, r.capital_display));
        top.series.push_back(to_series("I (US$mn, real)", r.invest_real, 1e-6));
        svg::Panel bottom;
        bottom.y_label = "depreciation share";
        bottom.y_scale = svg::Scale::linear;
        bottom.series.push_back(to_series("delta", r.delta));
        fig.panels = {std::move(top), std::move(bottom)};
        em.emit("figures/fig_capital_inputs.svg", svg::render(fig));
    }
    {
        svg::Figure fig;
        fig.title = "Labor in CS occupations and the aggregate economy";
        fig.x_label = "year";
        svg::Panel panel;
        panel.y_label = "persons (log scale)";
        panel.y_scale = svg::Scale::log10;
        panel.series.push_back(to_series("L_agg (persons)", r.labor_agg));
        panel.series.push_back(to_series("L_CS (persons)", r.labor));
        fig.panels.push_back(std::move(panel));
        em.emit("figures/fig_labor.svg", svg::render(fig));
    }
    {
        svg::Figure fig;
        fig.title = "Real wages and the CS wage premium";
        fig.x_label = "year";
        svg::Panel top;
        top.y_label = "annual wage (US$, real, log scale)";
        top.y_scale = svg::Scale::log10;
        top.series.push_back(to_series("W_agg", r.wages.real_agg));
        top.series.push_back(to_series("W_CS", r.wages.real_cs));
        svg::Panel bottom;
        bottom.y_label = "premium";
        bottom.y_scale = svg::Scale::linear;
        bottom.series.push_back(to_series("W_CS / W_agg", r.wages.premium));
        fig.panels = {std::move(top), std::move(bottom)};
        em.emit("figures/fig_wages.svg", svg::render(fig));
    }
    if (log) {
        *log << "inputs: capital " << r.capital.first_year() << "-" << r.capital.last_year()
             << ", labor " << r.labor.first_year() << "-" << r.labor.last_year() << "\n";
    }
}

// ---------------------------------------------------------------------------
// production fit
// ---------------------------------------------------------------------------

production::FactorShares load_alpha(Manifest& manifest) {
    const csv::Table table = csv::read_table(manifest.path_for("factor_shares"));
    for (const auto& row : table.rows) {
        if (row.size() >= 3 && row[0] == manifest.alpha_scope()) {
            double comp = 0.0, va = 0.0;
            if (!csv::parse_double(row[1], comp) || !csv::parse_double(row[2], va)) {
                throw DataError("factor share row for '" + row[0] + "' is malformed");
            }
            return production::factor_share_alpha(comp, va);
        }
    }
    throw DataError("factor shares table has no scope '" + manifest.alpha_scope() + "'");
}

AnnualSeries log_of(const AnnualSeries& s) {
    AnnualSeries out;
    out.units = Units::log_points;
    for (const auto& [year, v] : s.points) {
        if (v <= 0.0) throw DataError("cannot log non-positive value at year " + std::to_string(year));
        out.points[year] = std::log(v);
    }
    return out;
}

double series_doubling_years(const AnnualSeries& s) {
    const double span = static_cast<double>(s.last_year() - s.first_year());
    const double growth = std::log(s.points.rbegin()->second / s.points.begin()->second);
    if (growth <= 0.0) return std::numeric_limits<double>::infinity();
    return span * std::log(2.0) / growth;
}

void emit_fit(Emitter& em, Manifest& manifest, const InputsResult& inputs, std::ostream* log) {
    using namespace production;
    const FactorShares shares = load_alpha(manifest);
    const AnnualSeries log_k = log_of(inputs.capital);
    const AnnualSeries log_l = log_of(inputs.labor);

    std::vector<CobbDouglasFit> fits;
    for (const auto& spec : manifest.proxies()) {
        OutputProxy proxy;
        proxy.id = spec.id;
        proxy.transform = spec.transform;
        proxy.unit_map = spec.unit_map;
        proxy.observations = load_annual_csv(manifest.proxy_path(spec), Units::ratio);
        fits.push_back(fit_mean_log_a(to_log_output(proxy), log_k, log_l, shares.alpha, spec.id));
    }
    if (fits.empty()) throw DataError("manifest declares no output proxies");

    std::ostringstream summary;
    summary << "proxy,alpha,mean_logA,r2,n_obs\n";
    for (const auto& f : fits) {
        summary << f.proxy << "," << format_double(f.alpha) << "," << format_double(f.mean_log_a)
                << "," << format_double(f.r2) << "," << f.n_obs << "\n";
    }
    em.emit("tables/fit_summary.csv", summary.str());

    const AlignedSeries aligned = align_series(fits, manifest.reference_proxy(), log_k, log_l);
    std::vector<int> years;
    for (const auto& [y, _] : aligned.model) years.push_back(y);
    for (const auto& [_, obs] : aligned.observed) {
        for (const auto& [y, __] : obs) years.push_back(y);
    }
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());

    std::ostringstream aligned_csv;
    aligned_csv << "year,model";
    for (const auto& [id, _] : aligned.observed) aligned_csv << "," << id;
    aligned_csv << "\n";
    for (int y : years) {
        aligned_csv << y << ",";
        if (aligned.model.count(y)) aligned_csv << format_double(aligned.model.at(y));
        for (const auto& [_, obs] : aligned.observed) {
            aligned_csv << ",";
            if (obs.count(y)) aligned_csv << format_double(obs.at(y));
        }
        aligned_csv << "\n";
    }
    em.emit("tables/aligned_series.csv", aligned_csv.str());

    svg::Figure fig;
    fig.title = "Output proxies against the two-factor model";
    fig.x_label = "year";
    svg::Panel panel;
    panel.y_label = "log10 level, common scale";
    panel.y_scale = svg::Scale::linear;
    svg::Series model{"model", {}, svg::Mark::line};
    for (const auto& [y, v] : aligned.model) model.xy.push_back({static_cast<double>(y), v});
    panel.series.push_back(std::move(model));
    for (const auto& [id, obs] : aligned.observed) {
        svg::Series s{id, {}, svg::Mark::points};
        for (const auto& [y, v] : obs) s.xy.push_back({static_cast<double>(y), v});
        panel.series.push_back(std::move(s));
    }
    fig.panels.push_back(std::move(panel));
    em.emit("figures/fig_production_fit.svg", svg::render(fig));

    if (log) {
        const double dk = series_doubling_years(inputs.capital);
        const double dl = series_doubling_years(inputs.labor);
        const double dy = doubling_time(shares.alpha, dk, dl);
        *log << "fit: alpha = " << format_double(shares.alpha) << " (" << manifest.alpha_scope()
             << ")\n";
        *log << "fit: capital doubles every " << format_double(dk) << " years, labor every "
             << format_double(dl) << " years, model output every " << format_double(dy)
             << " years\n";
        for (const auto& f : fits) {
            *log << "fit: " << f.proxy << " R^2 = " << format_double(f.r2) << " over " << f.n_obs
                 << " observations\n";
        }
    }
}

// ---------------------------------------------------------------------------
// scaling laws
// ---------------------------------------------------------------------------

void emit_scaling(Emitter& em, Manifest& manifest, std::ostream* log) {
    using namespace scaling;
    const csv::Table table = csv::read_table(manifest.path_for("scaling_samples"));
    std::ostringstream summary;
    summary << "key,value\n";

    svg::Figure fig;
    fig.x_label = "training compute C (FLOPs)";
    svg::Panel panel;
    panel.y_scale = svg::Scale::log10;

    if (table.header.size() >= 3 && table.header[0] == "dataset") {
        std::vector<JointSample> samples;
        for (const auto& row : table.rows) {
            JointSample s;
            if (row.size() < 3 || !csv::parse_double(row[0], s.dataset) ||
                !csv::parse_double(row[1], s.params) || !csv::parse_double(row[2], s.loss)) {
                throw DataError("malformed scaling sample row");
            }
            samples.push_back(s);
        }
        const JointLossFit fit = fit_joint_loss(samples);
        summary << "form,joint-loss\n";
        summary << "l_min," << format_double(fit.l_min) << "\n";
        summary << "b," << format_double(fit.b) << "\n";
        summary << "beta," << format_double(fit.beta) << "\n";
        summary << "g," << format_double(fit.g) << "\n";
        summary << "gamma," << format_double(fit.gamma) << "\n";
        summary << "residual_norm," << format_double(fit.residual_norm) << "\n";
        summary << "converged," << (fit.converged ? "true" : "false") << "\n";
        try {
            summary << "effective_alpha," << format_double(effective_alpha(fit)) << "\n";
        } catch (const NumericError&) {
            summary << "effective_alpha,\n"; // exponents disagree; see allocation rows
        }
        const double c_ref = manifest.unit("reference_compute", 1e21);
        const Allocation alloc = optimal_allocation(fit, c_ref, 1.0);
        summary << "reference_compute," << format_double(c_ref) << "\n";
        summary << "d_star," << format_double(alloc.dataset) << "\n";
        summary << "p_star," << format_double(alloc.params) << "\n";

        fig.title = "Joint loss fit at the compute-optimal allocation";
        panel.y_label = "loss";
        svg::Series points{"observed", {}, svg::Mark::points};
        double c_min = 1e300, c_max = 0.0;
        for (const auto& s : samples) {
            const double c = s.dataset * s.params;
            points.xy.push_back({std::log10(c), s.loss});
            c_min = std::min(c_min, c);
            c_max = std::max(c_max, c);
        }
        std::sort(points.xy.begin(), points.xy.end());
        svg::Series curve{"fit (optimal D,P)", {}, svg::Mark::line};
        for (int i = 0; i <= 64; ++i) {
            const double lc = std::log(c_min) +
                              (std::log(c_max) - std::log(c_min)) * static_cast<double>(i) / 64.0;
            const Allocation a = optimal_allocation(fit, std::exp(lc), 1.0);
            const double loss = fit.l_min + fit.b / std::pow(a.dataset, fit.beta) +
                                fit.g / std::pow(a.params, fit.gamma);
            curve.xy.push_back({lc / std::log(10.0), loss});
        }
        panel.series.push_back(std::move(points));
        panel.series.push_back(std::move(curve));
        fig.x_label = "log10 C";
        if (log) {
            *log << "scaling: joint fit beta = " << format_double(fit.beta)
                 << ", gamma = " << format_double(fit.gamma) << ", residual "
                 << format_double(fit.residual_norm) << "\n";
        }
    } else {
        std::vector<PowerSample> samples;
        for (const auto& row : table.rows) {
            PowerSample s;
            if (row.size() < 2 || !csv::parse_double(row[0], s.compute) ||
                !csv::parse_double(row[1], s.output)) {
                throw DataError("malformed scaling sample row");
            }
            samples.push_back(s);
        }
        const ScalingFit fit = fit_power_law(samples);
        summary << "form,power-law\n";
        summary << "alpha_prime," << format_double(fit.alpha_prime) << "\n";
        summary << "prefactor," << format_double(fit.prefactor) << "\n";
        summary << "residual_norm," << format_double(fit.residual_norm) << "\n";

        fig.title = "Performance against training compute";
        panel.y_label = "performance";
        svg::Series points{"observed", {}, svg::Mark::points};
        for (const auto& s : samples) points.xy.push_back({std::log10(s.compute), s.output});
        std::sort(points.xy.begin(), points.xy.end());
        svg::Series curve{"fit", {}, svg::Mark::line};
        for (const auto& [lx, _] : points.xy) {
            curve.xy.push_back({lx, fit.prefactor * std::pow(std::pow(10.0, lx), fit.alpha_prime)});
        }
        panel.series.push_back(std::move(points));
        panel.series.push_back(std::move(curve));
        fig.x_label = "log10 C";
        if (log) {
            *log << "scaling: power-law exponent " << format_double(fit.alpha_prime) << "\n";
        }
    }

    em.emit("tables/scaling_summary.csv", summary.str());
    fig.panels.push_back(std::move(panel));
    em.emit("figures/fig_scaling.svg", svg::render(fig));
}

} // namespace

ReportBundle run(Command command, Manifest& manifest, const RunOptions& options) {
    if (options.phi_ai) manifest.override_phi_ai(*options.phi_ai);
    if (options.strict_formula) manifest.override_strict_formula(*options.strict_formula);
    if (options.out_dir) manifest.override_out_dir(*options.out_dir);

    Emitter em(manifest.out_dir());
    std::ostream* log = options.log;

    switch (command) {
        case Command::ingest: {
            emit_ingest(em, load_corpus(manifest), log);
            break;
        }
        case Command::index: {
            const auto result = load_corpus(manifest);
            emit_index(em, manifest, result.corpus, log);
            break;
        }
        case Command::inputs: {
            emit_inputs(em, compute_inputs(manifest), log);
            break;
        }
        case Command::fit: {
            const InputsResult inputs = compute_inputs(manifest);
            emit_fit(em, manifest, inputs, log);
            break;
        }
        case Command::scaling: {
            emit_scaling(em, manifest, log);
            break;
        }
        case Command::all: {
            const auto result = load_corpus(manifest);
            emit_ingest(em, result, log);
            emit_index(em, manifest, result.corpus, log);
            const InputsResult inputs = compute_inputs(manifest);
            emit_inputs(em, inputs, log);
            emit_fit(em, manifest, inputs, log);
            break;
        }
    }
    return em.finish();
}

} // namespace asota::report
