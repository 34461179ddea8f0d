// Copyright 2026 The anyonbraid authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "anyonbraid/circuit.hpp"
#include "anyonbraid/errors.hpp"
#include "anyonbraid/pauli.hpp"
#include "anyonbraid/rng.hpp"
#include "anyonbraid/tableau.hpp"

namespace anyonbraid {

/// Verification fixtures. flip_s_phase makes the statevector S gate apply -i
/// instead of +i, a deliberate sign bug that engine cross-checks must catch.
struct MutationHooks {
    bool flip_s_phase = false;
};
inline MutationHooks& mutation_hooks() {
    static MutationHooks hooks;
    return hooks;
}

/// Dense complex-amplitude simulator; the independent oracle for the tableau
/// engine. Qubit 1 (first qubit, index 0 internally) is the most significant
/// bit of the basis index, so |q1 q2 ... qn> has index q1*2^(n-1)+...+qn.
class StateVector {
  public:
    static std::size_t qubit_cap() {
        if (const char* env = std::getenv("ANYONBRAID_SV_CAP")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1 && v <= 30) return static_cast<std::size_t>(v);
        }
        return 20;
    }

    explicit StateVector(std::size_t n) : n_(n) {
        if (n == 0) throw input_error("statevector needs at least one qubit");
        if (n > qubit_cap())
            throw input_error("statevector cap exceeded: " + std::to_string(n) + " > " +
                              std::to_string(qubit_cap()) + " qubits (ANYONBRAID_SV_CAP overrides)");
        amp_.assign(std::size_t{1} << n, {0.0, 0.0});
        amp_[0] = 1.0;
    }

    std::size_t num_qubits() const { return n_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
    std::complex<double>& amplitude(std::size_t idx) { return amp_[idx]; }

    void apply(const Gate& g) {
        switch (g.kind) {
            case GateKind::H: apply_h(g.a); break;
            case GateKind::S: apply_phase(g.a, mutation_hooks().flip_s_phase
                                                   ? std::complex<double>(0, -1)
                                                   : std::complex<double>(0, 1));
                break;
            case GateKind::Sdg: apply_phase(g.a, {0, -1}); break;
            case GateKind::X: apply_x(g.a); break;
            case GateKind::Y: apply_y(g.a); break;
            case GateKind::Z: apply_phase(g.a, {-1, 0}); break;
            case GateKind::CZ: apply_cz(g.a, g.b); break;
            case GateKind::CNOT: apply_cnot(g.a, g.b); break;
            case GateKind::MeasurePauli:
                throw input_error("measurement needs a bit source; use measure()");
        }
    }

    /// <psi|P|psi>; real up to rounding for +/-1-signed observables.
    double expectation(const PauliString& p) const {
        check_obs(p);
        auto [mx, mz, coeff0] = masks(p);
        std::complex<double> acc = 0;
        for (std::size_t b = 0; b < amp_.size(); ++b) {
            double par = (std::popcount(b & mz) & 1) ? -1.0 : 1.0;
            acc += std::conj(amp_[b ^ mx]) * (coeff0 * par) * amp_[b];
        }
        if (std::abs(acc.imag()) > 1e-9)
            throw input_error("expectation of a non-hermitian observable");
        return acc.real();
    }

    /// Projective measurement. Uses `bits` only on the indeterminate branch.
    /// prob_plus reports the pre-measurement Born probability of +1.
    struct SvMeasure {
        int value;
        bool deterministic;
        double prob_plus;
    };
    SvMeasure measure(const PauliString& p, BitSource& bits) {
        double e = expectation(p);
        double p_plus = 0.5 * (1.0 + e);
        if (p_plus >= 0.75) {
            project(p, +1, p_plus);
            return {+1, true, p_plus};
        }
        if (p_plus <= 0.25) {
            project(p, -1, p_plus);
            return {-1, true, p_plus};
        }
        int value = bits.bit() ? -1 : +1;
        project(p, value, p_plus);
        return {value, false, p_plus};
    }

    /// Projects onto the `value` eigenspace of p and renormalizes.
    void project(const PauliString& p, int value, double prob_plus) {
        double prob = value > 0 ? prob_plus : 1.0 - prob_plus;
        if (prob < 1e-12) throw input_error("projection onto a zero-probability outcome");
        auto pv = applied_pauli(p);
        double inv = 0.5 / std::sqrt(prob);
        for (std::size_t b = 0; b < amp_.size(); ++b)
            amp_[b] = (amp_[b] + double(value) * pv[b]) * inv;
    }

    double norm() const {
        double s = 0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    /// <a|b>.
    static std::complex<double> overlap(const StateVector& a, const StateVector& b) {
        if (a.n_ != b.n_) throw input_error("overlap size mismatch");
        std::complex<double> acc = 0;
        for (std::size_t i = 0; i < a.amp_.size(); ++i)
            acc += std::conj(a.amp_[i]) * b.amp_[i];
        return acc;
    }

    /// Binary dump: 8-byte little-endian qubit count, then interleaved
    /// (re, im) doubles. Debugging aid only.
    void save(const std::string& path) const {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw input_error("cannot open '" + path + "' for writing");
        std::uint64_t n = n_;
        std::fwrite(&n, sizeof n, 1, f);
        for (const auto& a : amp_) {
            double re = a.real(), im = a.imag();
            std::fwrite(&re, sizeof re, 1, f);
            std::fwrite(&im, sizeof im, 1, f);
        }
        std::fclose(f);
    }

    static StateVector load(const std::string& path) {
        std::FILE* f = std::fopen(path.c_str(), "rb");
        if (!f) throw input_error("cannot open '" + path + "'");
        std::uint64_t n = 0;
        if (std::fread(&n, sizeof n, 1, f) != 1) {
            std::fclose(f);
            throw input_error("truncated state dump");
        }
        StateVector out(static_cast<std::size_t>(n));
        for (auto& a : out.amp_) {
            double re, im;
            if (std::fread(&re, sizeof re, 1, f) != 1 || std::fread(&im, sizeof im, 1, f) != 1) {
                std::fclose(f);
                throw input_error("truncated state dump");
            }
            a = {re, im};
        }
        std::fclose(f);
        return out;
    }

  private:
    void check_q(std::size_t q) const {
        if (q >= n_) throw input_error("qubit index out of range");
    }
    void check_obs(const PauliString& p) const {
        if (p.num_qubits() != n_) throw input_error("observable size mismatch");
        if (!p.hermitian()) throw input_error("observable sign must be +1 or -1");
    }

    std::size_t index_bit(std::size_t q) const { return n_ - 1 - q; }

    /// (x mask, z mask in index-bit space, constant i^(phase+#Y) factor).
    std::tuple<std::size_t, std::size_t, std::complex<double>> masks(const PauliString& p) const {
        std::size_t mx = 0, mz = 0;
        unsigned k = p.phase_exponent();
        for (std::size_t q = 0; q < n_; ++q) {
            if (p.x(q)) mx |= std::size_t{1} << index_bit(q);
            if (p.z(q)) mz |= std::size_t{1} << index_bit(q);
            if (p.x(q) && p.z(q)) k = (k + 1) & 3;
        }
        static const std::complex<double> kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return {mx, mz, kI[k]};
    }

    std::vector<std::complex<double>> applied_pauli(const PauliString& p) const {
        auto [mx, mz, coeff0] = masks(p);
        std::vector<std::complex<double>> out(amp_.size());
        for (std::size_t b = 0; b < amp_.size(); ++b) {
            double par = (std::popcount(b & mz) & 1) ? -1.0 : 1.0;
            out[b ^ mx] = coeff0 * par * amp_[b];
        }
        return out;
    }

    void apply_h(std::size_t q) {
        check_q(q);
        std::size_t step = std::size_t{1} << index_bit(q);
        const double inv = 1.0 / std::sqrt(2.0);
        for (std::size_t base = 0; base < amp_.size(); base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                auto a = amp_[i], b = amp_[i + step];
                amp_[i] = (a + b) * inv;
                amp_[i + step] = (a - b) * inv;
            }
        }
    }

    void apply_phase(std::size_t q, std::complex<double> f) {
        check_q(q);
        std::size_t m = std::size_t{1} << index_bit(q);
        for (std::size_t b = 0; b < amp_.size(); ++b)
            if (b & m) amp_[b] *= f;
    }

    void apply_x(std::size_t q) {
        check_q(q);
        std::size_t step = std::size_t{1} << index_bit(q);
        for (std::size_t base = 0; base < amp_.size(); base += 2 * step)
            for (std::size_t i = base; i < base + step; ++i)
                std::swap(amp_[i], amp_[i + step]);
    }

    void apply_y(std::size_t q) {
        check_q(q);
        std::size_t step = std::size_t{1} << index_bit(q);
        const std::complex<double> im{0, 1};
        for (std::size_t base = 0; base < amp_.size(); base += 2 * step) {
            for (std::size_t i = base; i < base + step; ++i) {
                auto a0 = amp_[i], a1 = amp_[i + step];
                amp_[i] = -im * a1;
                amp_[i + step] = im * a0;
            }
        }
    }

    void apply_cz(std::size_t q, std::size_t t) {
        check_q(q);
        check_q(t);
        if (q == t) throw input_error("CZ needs distinct operands");
        std::size_t m = (std::size_t{1} << index_bit(q)) | (std::size_t{1} << index_bit(t));
        for (std::size_t b = 0; b < amp_.size(); ++b)
            if ((b & m) == m) amp_[b] = -amp_[b];
    }

    void apply_cnot(std::size_t c, std::size_t t) {
        check_q(c);
        check_q(t);
        if (c == t) throw input_error("CNOT needs distinct operands");
        std::size_t mc = std::size_t{1} << index_bit(c);
        std::size_t mt = std::size_t{1} << index_bit(t);
        for (std::size_t b = 0; b < amp_.size(); ++b)
            if ((b & mc) && !(b & mt)) std::swap(amp_[b], amp_[b | mt]);
    }

    std::size_t n_;
    std::vector<std::complex<double>> amp_;
};

inline std::vector<MeasureResult> run(StateVector& s, const Circuit& c, BitSource& bits) {
    if (c.n > s.num_qubits()) throw input_error("circuit wider than state");
    std::vector<MeasureResult> out;
    for (const auto& g : c.ops) {
        if (g.is_measurement()) {
            auto r = s.measure(g.observable->embedded(s.num_qubits()), bits);
            out.push_back({r.value, r.deterministic});
        } else {
            s.apply(g);
        }
    }
    return out;
}

/// Dual-engine run of one circuit. The tableau engine draws outcomes from the
/// seed; the statevector engine is forced to the same outcomes, so the two
/// runs describe the same trajectory and every comparison is exact:
/// deterministic flags and values must match, indeterminate Born
/// probabilities must be 1/2 within 1e-12, and after the run all single-qubit
/// Pauli expectations must agree.
struct CrossCheckReport {
    std::size_t circuits = 0;
    std::size_t measurements = 0;
    double max_prob_deviation = 0.0;  // max |p - 1/2| over indeterminate measurements
    bool agreed = true;
    std::string first_mismatch;
};

inline CrossCheckReport cross_check(const Circuit& c, const std::vector<std::uint64_t>& seeds) {
    CrossCheckReport rep;
    if (c.n > StateVector::qubit_cap())
        throw input_error("statevector cap exceeded: circuit has " + std::to_string(c.n) +
                          " qubits");
    auto fail = [&](const std::string& why) {
        if (rep.agreed) {
            rep.agreed = false;
            rep.first_mismatch = why;
        }
    };
    for (auto seed : seeds) {
        ++rep.circuits;
        Rng rng(seed);
        Tableau t(std::max<std::size_t>(c.n, 1));
        auto outcomes = run(t, c, rng);
        StateVector sv(std::max<std::size_t>(c.n, 1));
        std::size_t mi = 0;
        bool diverged = false;
        for (const auto& g : c.ops) {
            if (diverged) break;
            if (!g.is_measurement()) {
                sv.apply(g);
                continue;
            }
            ++rep.measurements;
            const auto& got = outcomes[mi++];
            PauliString obs = g.observable->embedded(sv.num_qubits());
            double e = sv.expectation(obs);
            double p_plus = 0.5 * (1.0 + e);
            bool sv_det = p_plus >= 0.75 || p_plus <= 0.25;
            if (sv_det != got.deterministic) {
                fail("determinism flag mismatch at measurement " + std::to_string(mi) +
                     " (seed " + std::to_string(seed) + ")");
            }
            if (got.deterministic) {
                double expect = got.value > 0 ? 1.0 : 0.0;
                if (std::abs(p_plus - expect) > 1e-12)
                    fail("deterministic outcome mismatch at measurement " + std::to_string(mi));
            } else {
                rep.max_prob_deviation = std::max(rep.max_prob_deviation, std::abs(p_plus - 0.5));
                if (std::abs(p_plus - 0.5) > 1e-12)
                    fail("indeterminate probability not 1/2 at measurement " + std::to_string(mi));
            }
            double prob = got.value > 0 ? p_plus : 1.0 - p_plus;
            if (prob < 1e-9) {
                // The trajectories have split; nothing further to compare.
                fail("engines disagree beyond recovery at measurement " + std::to_string(mi));
                diverged = true;
                continue;
            }
            sv.project(obs, got.value, p_plus);
        }
        if (diverged) continue;
        for (std::size_t q = 0; q < t.num_qubits(); ++q) {
            for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                PauliString obs = PauliString::single(t.num_qubits(), q, p);
                double diff = std::abs(sv.expectation(obs) - double(t.expectation(obs)));
                if (diff > 1e-9)
                    fail("post-run expectation mismatch on qubit " + std::to_string(q + 1));
            }
        }
    }
    return rep;
}

inline double sv_expectation(const StateVector& s, const PauliString& p) {
    return s.expectation(p);
}
inline std::complex<double> sv_overlap(const StateVector& a, const StateVector& b) {
    return StateVector::overlap(a, b);
}

}  // namespace anyonbraid
