#include "rcc/precode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcc/peeling.hpp"

namespace rcc {

Precode::Precode(std::uint32_t n, const PrecodeSpec& spec, RngStream& rng)
    : n_(n), spec_(spec) {
    if (spec.rate <= 0.0 || spec.rate > 1.0)
        throw std::invalid_argument("precode rate must be in (0, 1]");
    k_ = static_cast<std::uint32_t>(std::ceil(n / spec.rate));
    if (spec.kind == PrecodeSpec::Kind::none) {
        if (k_ != n_) throw std::invalid_argument("precode kind none requires rate 1");
        return;
    }
    const std::uint32_t parity = k_ - n_;
    checks_.assign(parity, {});
    if (parity == 0) return;
    // Stub assignment by repeated shuffles of the message indices keeps the
    // message-side degrees within +/-1 of each other.
    std::vector<std::uint32_t> perm(n_);
    for (std::uint32_t i = 0; i < n_; ++i) perm[i] = i;
    std::size_t pos = n_;
    for (std::uint32_t c = 0; c < parity; ++c) {
        auto& chk = checks_[c];
        chk.reserve(spec.check_degree);
        while (chk.size() < static_cast<std::size_t>(spec.check_degree)) {
            if (pos == n_) {
                for (std::uint32_t i = n_ - 1; i > 0; --i)
                    std::swap(perm[i], perm[rng.next_below(i + 1)]);
                pos = 0;
            }
            std::uint32_t m = perm[pos++];
            if (std::find(chk.begin(), chk.end(), m) == chk.end()) chk.push_back(m);
        }
    }
}

std::vector<Payload> Precode::encode(const std::vector<Payload>& message) const {
    if (message.size() != n_) throw std::invalid_argument("precode encode: wrong message size");
    std::vector<Payload> out = message;
    out.resize(k_);
    for (std::uint32_t c = 0; c < k_ - n_; ++c) {
        Payload p = message[checks_[c][0]];
        for (std::size_t i = 1; i < checks_[c].size(); ++i) xor_into(p, message[checks_[c][i]]);
        out[n_ + c] = std::move(p);
    }
    return out;
}

Precode::DecodeResult Precode::decode(const std::vector<std::uint8_t>& intermediate_known,
                                      const std::vector<Payload>* intermediates) const {
    if (intermediate_known.size() != k_)
        throw std::invalid_argument("precode decode: wrong flag count");
    DecodeResult res;
    res.message_known.assign(n_, 0);
    const bool payload_mode = intermediates != nullptr;
    if (payload_mode) res.message.assign(n_, {});

    if (spec_.kind == PrecodeSpec::Kind::none) {
        res.complete = true;
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (!intermediate_known[i]) res.complete = false;
            else {
                res.message_known[i] = 1;
                if (payload_mode) res.message[i] = (*intermediates)[i];
            }
        }
        return res;
    }

    // One "user" of k symbols; each parity check becomes a coded symbol of
    // value zero over {parity symbol} + its message symbols.
    PeelingDecoder dec(1, k_, payload_mode);
    Payload zero;
    if (payload_mode) {
        for (std::uint32_t i = 0; i < k_; ++i)
            if (intermediate_known[i] && !(*intermediates)[i].empty()) {
                zero.assign((*intermediates)[i].size(), 0);
                break;
            }
    }
    for (std::uint32_t c = 0; c < k_ - n_; ++c) {
        CodedSymbol sym;
        sym.neighbors.push_back({0, n_ + c});
        for (std::uint32_t m : checks_[c]) sym.neighbors.push_back({0, m});
        if (payload_mode) sym.payload = zero;
        dec.add(sym);
    }
    for (std::uint32_t i = 0; i < k_; ++i)
        if (intermediate_known[i])
            dec.set_known({0, i}, payload_mode ? &(*intermediates)[i] : nullptr);
    res.complete = true;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (dec.recovered().known({0, i})) {
            res.message_known[i] = 1;
            if (payload_mode) res.message[i] = dec.payload_of({0, i});
        } else {
            res.complete = false;
        }
    }
    return res;
}

}  // namespace rcc
