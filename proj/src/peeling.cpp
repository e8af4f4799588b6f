#include "rcc/peeling.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcc {

namespace {

void strip_edges(std::vector<CodedSymbol>& coded, const RecoveryState& resolved,
                 const std::vector<Payload>* payloads, std::uint32_t k) {
    for (auto& sym : coded) {
        auto& nb = sym.neighbors;
        for (size_t i = 0; i < nb.size();) {
            if (resolved.known(nb[i])) {
                if (payloads && !sym.payload.empty())
                    xor_into(sym.payload,
                             (*payloads)[static_cast<size_t>(nb[i].user) * k + nb[i].index]);
                nb[i] = nb.back();
                nb.pop_back();
            } else {
                ++i;
            }
        }
    }
}

}  // namespace

SymbolGraph strip_known(SymbolGraph graph, const RecoveryState& known,
                        const std::vector<Payload>* known_payloads) {
    strip_edges(graph.coded, known, known_payloads, known.block_size());
    return graph;
}

std::vector<SymbolId> peel_decode(SymbolGraph& graph, int max_iters) {
    std::vector<SymbolId> delta;
    RecoveryState resolved(graph.known.users(), graph.known.block_size());
    std::vector<Payload> resolved_payloads;
    bool payload_mode = false;
    for (const auto& s : graph.coded)
        if (!s.payload.empty()) payload_mode = true;
    if (payload_mode)
        resolved_payloads.resize(static_cast<size_t>(graph.known.users()) *
                                 graph.known.block_size());

    for (int iter = 0; iter < max_iters; ++iter) {
        // One sweep: collect all degree-1 symbols, then resolve and strip.
        std::vector<size_t> ripple;
        for (size_t i = 0; i < graph.coded.size(); ++i)
            if (graph.coded[i].neighbors.size() == 1) ripple.push_back(i);
        if (ripple.empty()) break;
        for (size_t i : ripple) {
            auto& sym = graph.coded[i];
            if (sym.neighbors.size() != 1) continue;  // already stripped this sweep
            SymbolId id = sym.neighbors[0];
            if (!resolved.mark(id)) continue;
            delta.push_back(id);
            if (payload_mode) {
                size_t g = static_cast<size_t>(id.user) * graph.known.block_size() + id.index;
                resolved_payloads[g] = sym.payload;
            }
        }
        strip_edges(graph.coded, resolved, payload_mode ? &resolved_payloads : nullptr,
                    graph.known.block_size());
    }
    for (const auto& id : delta) graph.known.mark(id);
    return delta;
}

PeelingDecoder::PeelingDecoder(std::uint32_t users, std::uint32_t k, bool payload_mode)
    : k_(k),
      payload_mode_(payload_mode),
      state_(users, k),
      adjacency_(static_cast<size_t>(users) * k) {
    if (payload_mode_) payloads_.resize(adjacency_.size());
}

void PeelingDecoder::set_known(SymbolId id, const Payload* payload) {
    if (state_.known(id)) return;
    strip_and_mark(id, payload);
    newly_.pop_back();  // a priori knowns do not count as recoveries
    cascade();
}

void PeelingDecoder::add(const CodedSymbol& s) {
    Entry e;
    e.payload = s.payload;
    for (const auto& id : s.neighbors) {
        if (state_.known(id)) {
            if (payload_mode_ && !e.payload.empty()) xor_into(e.payload, payloads_[gid(id)]);
        } else {
            e.unknown.push_back(id);
        }
    }
    std::uint32_t idx = static_cast<std::uint32_t>(entries_.size());
    entries_.push_back(std::move(e));
    auto& entry = entries_.back();
    for (const auto& id : entry.unknown) adjacency_[gid(id)].push_back(idx);
    if (entry.unknown.size() == 1) {
        ripple_.push_back(idx);
        cascade();
    }
}

void PeelingDecoder::strip_and_mark(SymbolId id, const Payload* payload) {
    if (!state_.mark(id)) return;
    newly_.push_back(id);
    if (payload_mode_ && payload) payloads_[gid(id)] = *payload;
    auto& adj = adjacency_[gid(id)];
    for (std::uint32_t idx : adj) {
        auto& e = entries_[idx];
        auto it = std::find(e.unknown.begin(), e.unknown.end(), id);
        if (it == e.unknown.end()) continue;
        *it = e.unknown.back();
        e.unknown.pop_back();
        if (payload_mode_ && !e.payload.empty()) xor_into(e.payload, payloads_[gid(id)]);
        if (e.unknown.size() == 1) ripple_.push_back(idx);
    }
    adj.clear();
    adj.shrink_to_fit();
}

void PeelingDecoder::cascade() {
    while (!ripple_.empty()) {
        std::uint32_t idx = ripple_.back();
        ripple_.pop_back();
        auto& e = entries_[idx];
        if (e.unknown.size() != 1) continue;
        SymbolId id = e.unknown[0];
        e.unknown.clear();
        strip_and_mark(id, payload_mode_ ? &e.payload : nullptr);
    }
}

std::vector<SymbolId> PeelingDecoder::take_newly_recovered() {
    std::vector<SymbolId> out;
    out.swap(newly_);
    return out;
}

const Payload& PeelingDecoder::payload_of(SymbolId id) const {
    if (!payload_mode_) throw std::logic_error("decoder is in structural mode");
    if (!state_.known(id)) throw std::logic_error("symbol not recovered");
    return payloads_[gid(id)];
}

}  // namespace rcc
