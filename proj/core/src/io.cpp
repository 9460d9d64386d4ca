#include "adawave/io.hpp"

#include <cstdio>
#include <fstream>

#include "adawave/errors.hpp"

namespace adawave {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write file: " + tmp);
        out << content;
        if (!out.flush()) throw InvalidInput("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidInput("cannot move output into place: " + path);
}

std::string design_csv(const Design& design) {
    std::string out = "numerator,level\n";
    for (const DyadicPoint& p : design.points()) {
        out += std::to_string(p.numerator());
        out += ',';
        out += std::to_string(p.level());
        out += '\n';
    }
    return out;
}

std::string coefficients_csv(const CoefficientSet& coeffs) {
    std::string out = "j,k,i_n,beta_hat,surviving\n";
    for (int j = coeffs.coarsest; j < coeffs.top; ++j) {
        const auto lvl = static_cast<std::size_t>(j - coeffs.coarsest);
        for (std::uint64_t k = 0; k < coeffs.beta[lvl].size(); ++k) {
            out += std::to_string(j);
            out += ',';
            out += std::to_string(k);
            out += ',';
            out += std::to_string(coeffs.i_n[lvl][k]);
            out += ',';
            out += format_double(coeffs.beta[lvl][k]);
            out += ',';
            out += coeffs.thresholded && coeffs.surviving[lvl][k] ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string trajectory_csv(const std::vector<StageRecord>& trajectory) {
    std::string out = "stage,n,j_max,sigma_hat\n";
    for (const StageRecord& rec : trajectory) {
        out += std::to_string(rec.stage);
        out += ',';
        out += std::to_string(rec.n);
        out += ',';
        out += std::to_string(rec.j_max);
        out += ',';
        out += format_double(rec.sigma_hat);
        out += '\n';
    }
    return out;
}

std::string results_csv(const ExperimentConfig& config, const std::vector<RunResult>& runs) {
    std::string out = "function,sigma,design,rep,max_error,sigma_hat,seconds\n";
    for (const RunResult& r : runs) {
        out += test_function_name(config.function);
        out += ',';
        out += format_double(config.sigma);
        out += ',';
        out += design_mode_name(config.design);
        out += ',';
        out += std::to_string(r.replication);
        out += ',';
        out += format_double(r.max_error);
        out += ',';
        out += format_double(r.sigma_hat);
        out += ',';
        out += format_double(r.seconds);
        out += '\n';
    }
    return out;
}

std::string report_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "# max-error medians; noise streams independent per design arm\n";
    out +=
        "function,sigma,n,reps,uniform_median,uniform_ci_lo,uniform_ci_hi,"
        "adaptive_median,adaptive_ci_lo,adaptive_ci_hi,mwu_p\n";
    for (const ComparisonRow& r : rows) {
        out += test_function_name(r.function);
        out += ',';
        out += format_double(r.sigma);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.replications);
        for (double v : {r.uniform.median, r.uniform.lo, r.uniform.hi, r.adaptive.median,
                         r.adaptive.lo, r.adaptive.hi, r.p_value}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "# max-error medians; noise streams independent per design arm\n";
    out += "function,sigma,n,design,reps,median,ci_lo,ci_hi,mwu_p\n";
    for (const SweepRow& r : rows) {
        out += test_function_name(r.function);
        out += ',';
        out += format_double(r.sigma);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += design_mode_name(r.design);
        out += ',';
        out += std::to_string(r.replications);
        for (double v : {r.ci.median, r.ci.lo, r.ci.hi, r.p_value}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string function_csv(TestFunction fn, int level) {
    const std::vector<double> values = sample_grid(fn, level);
    const double h = std::ldexp(1.0, -level);
    std::string out = "x,f(x)\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
        out += format_double(static_cast<double>(k) * h);
        out += ',';
        out += format_double(values[k]);
        out += '\n';
    }
    return out;
}

}  // namespace adawave
