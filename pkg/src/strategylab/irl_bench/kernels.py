"""Compiled numeric kernels for the gridworld benchmark.

Everything here is deterministic given its inputs: the samplers consume
pre-drawn noise arrays instead of calling an RNG, so results are
identical across runs, processes, and worker counts.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def vi_sweeps(rewards, next_state, discount, values, delta_stop, max_sweeps):
    """In-place Gauss-Seidel value-iteration sweeps until the sup-norm
    change of one sweep drops below ``delta_stop``. Returns the sweep count."""
    n = rewards.shape[0]
    sweeps = 0
    for _ in range(max_sweeps):
        delta = 0.0
        for s in range(n):
            best = values[next_state[s, 0]]
            v = values[next_state[s, 1]]
            if v > best:
                best = v
            v = values[next_state[s, 2]]
            if v > best:
                best = v
            v = values[next_state[s, 3]]
            if v > best:
                best = v
            new_v = rewards[s] + discount * best
            d = new_v - values[s]
            if d < 0.0:
                d = -d
            if d > delta:
                delta = d
            values[s] = new_v
        sweeps += 1
        if delta < delta_stop:
            break
    return sweeps


@njit(cache=True)
def demo_loglik(rewards, next_state, discount, values, rationality, bias, actions):
    """Log-likelihood of a full state->action labeling under the biased
    Boltzmann demonstration model."""
    n = rewards.shape[0]
    total = 0.0
    logits = np.empty(4)
    for s in range(n):
        m = -1.0e300
        for a in range(4):
            ns = next_state[s, a]
            q = rewards[s] + discount * values[ns]
            l = rationality * (q + bias * (rewards[ns] - rewards[s]))
            logits[a] = l
            if l > m:
                m = l
        z = 0.0
        for a in range(4):
            z += np.exp(logits[a] - m)
        total += logits[actions[s]] - m - np.log(z)
    return total


@njit(cache=True)
def reflect(v):
    """Reflect a scalar into [-1, 1]."""
    while v < -1.0 or v > 1.0:
        if v > 1.0:
            v = 2.0 - v
        else:
            v = -2.0 - v
    return v


@njit(cache=True)
def _ll_at(features, next_state, discount, actions, rationality, weights, bias,
           values, delta_stop):
    rewards = features @ weights
    for s in range(values.shape[0]):
        values[s] = 0.0
    vi_sweeps(rewards, next_state, discount, values, delta_stop, 100000)
    return demo_loglik(rewards, next_state, discount, values, rationality, bias, actions)


@njit(cache=True)
def logit_direction(features, next_state, actions, steps, lr, decay):
    """Multinomial-logit fit of demonstrated actions against next-state
    features; a cheap, convex estimate of the reward direction."""
    n_states, n_feat = features.shape
    w = np.zeros(n_feat)
    for _ in range(steps):
        grad = np.zeros(n_feat)
        for s in range(n_states):
            m = -1.0e300
            logits = np.empty(4)
            for a in range(4):
                ns = next_state[s, a]
                dot = 0.0
                for k in range(n_feat):
                    dot += w[k] * features[ns, k]
                logits[a] = dot
                if dot > m:
                    m = dot
            z = 0.0
            for a in range(4):
                logits[a] = np.exp(logits[a] - m)
                z += logits[a]
            for a in range(4):
                coef = (1.0 if a == actions[s] else 0.0) - logits[a] / z
                ns = next_state[s, a]
                for k in range(n_feat):
                    grad[k] += coef * features[ns, k]
        for k in range(n_feat):
            w[k] = w[k] + lr * grad[k] / n_states - decay * w[k]
    return w


@njit(cache=True)
def coordinate_descent(features, next_state, discount, actions, rationality,
                       weights, bias_in, sample_bias, delta_stop, n_passes):
    """Greedy per-coordinate search over a fixed candidate grid; polishes a
    start point to a nearby likelihood optimum."""
    n_states, n_feat = features.shape
    cand = np.array([-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0])
    bias = bias_in
    values = np.zeros(n_states)
    best_ll = _ll_at(features, next_state, discount, actions, rationality,
                     weights, bias, values, delta_stop)
    for _ in range(n_passes):
        for j in range(n_feat):
            best_c = weights[j]
            for ci in range(cand.shape[0]):
                c = cand[ci]
                if c == best_c:
                    continue
                old = weights[j]
                weights[j] = c
                ll = _ll_at(features, next_state, discount, actions, rationality,
                            weights, bias, values, delta_stop)
                weights[j] = old
                if ll > best_ll:
                    best_ll = ll
                    best_c = c
            weights[j] = best_c
        if sample_bias:
            rewards = features @ weights
            for s in range(n_states):
                values[s] = 0.0
            vi_sweeps(rewards, next_state, discount, values, delta_stop, 100000)
            best_c = bias
            for ci in range(cand.shape[0]):
                ll = demo_loglik(rewards, next_state, discount, values, rationality,
                                 cand[ci], actions)
                if ll > best_ll:
                    best_ll = ll
                    best_c = cand[ci]
            bias = best_c
    return best_ll, weights, bias


@njit(cache=True)
def search_start(features, next_state, discount, actions, rationality,
                 random_weights, random_biases, fixed_bias, sample_bias,
                 delta_stop, descend_top):
    """Pick a chain start: score random draws plus logit-direction
    candidates, then coordinate-descend from the best few."""
    n_states, n_feat = features.shape
    w = logit_direction(features, next_state, actions, 120, 0.5, 1e-3)
    wmax = 1e-12
    for k in range(n_feat):
        a = abs(w[k])
        if a > wmax:
            wmax = a
    scales = np.array([0.3, 0.8, -0.3, -0.8])
    biases = np.array([-0.75, 0.0, 0.75])
    n_reg = scales.shape[0] * (biases.shape[0] if sample_bias else 1)
    k_rand = random_weights.shape[0]
    n_pool = k_rand + n_reg
    pool_w = np.empty((n_pool, n_feat))
    pool_b = np.empty(n_pool)
    for i in range(k_rand):
        for k in range(n_feat):
            pool_w[i, k] = random_weights[i, k]
        pool_b[i] = random_biases[i] if sample_bias else fixed_bias
    idx = k_rand
    for si in range(scales.shape[0]):
        if sample_bias:
            for bi in range(biases.shape[0]):
                for k in range(n_feat):
                    pool_w[idx, k] = scales[si] * w[k] / wmax
                pool_b[idx] = biases[bi]
                idx += 1
        else:
            for k in range(n_feat):
                pool_w[idx, k] = scales[si] * w[k] / wmax
            pool_b[idx] = fixed_bias
            idx += 1
    lls = np.empty(n_pool)
    values = np.zeros(n_states)
    for i in range(n_pool):
        lls[i] = _ll_at(features, next_state, discount, actions, rationality,
                        pool_w[i], pool_b[i], values, delta_stop)
    order = np.argsort(-lls)
    best_ll = -1.0e300
    best_w = pool_w[order[0]].copy()
    best_b = pool_b[order[0]]
    for r in range(descend_top):
        i = order[r]
        ll, cw, cb = coordinate_descent(features, next_state, discount, actions,
                                        rationality, pool_w[i].copy(), pool_b[i],
                                        sample_bias, delta_stop, 2)
        if ll > best_ll:
            best_ll = ll
            best_w = cw.copy()
            best_b = cb
    return best_w, best_b


@njit(cache=True)
def mh_chain(features, next_state, discount, actions, rationality,
             random_weights, random_biases, fixed_bias, sample_bias,
             normals, uniforms, burn_in, delta_stop, descend_top,
             anneal_floor, anneal_cycles, samples_out, biases_out):
    """Metropolis random-walk over the [-1,1] box with single-coordinate
    scans, annealed burn-in cycles, and a best-point restart before the
    sampling phase.

    ``normals`` has one column per (weight..., bias) coordinate; fixed-bias
    chains skip the bias column but index noise identically, so chains for
    different learners on the same noise block propose identical weight
    moves. Post-burn-in states land in ``samples_out``/``biases_out``.
    """
    n_states, n_feat = features.shape
    n_total = normals.shape[0]
    stride = n_feat + 1
    dim = stride if sample_bias else n_feat
    weights, bias = search_start(features, next_state, discount, actions, rationality,
                                 random_weights, random_biases, fixed_bias, sample_bias,
                                 delta_stop, descend_top)
    rewards = features @ weights
    values = np.zeros(n_states)
    vi_sweeps(rewards, next_state, discount, values, delta_stop, 100000)
    cur_ll = demo_loglik(rewards, next_state, discount, values, rationality, bias, actions)
    best_ll = cur_ll
    best_w = weights.copy()
    best_b = bias
    prop_values = np.empty(n_states)
    prop_rewards = np.empty(n_states)
    log_floor = np.log(anneal_floor)
    cycle_len = max(burn_in // anneal_cycles, 1)
    kept = 0
    accepted = 0
    proposed = 0
    for i in range(n_total):
        temp = 1.0
        if i < burn_in:
            pos = (i % cycle_len + 1.0) / cycle_len
            temp = np.exp(log_floor * (1.0 - pos))
        for j in range(dim):
            proposed += 1
            if j < n_feat:
                new_wj = reflect(weights[j] + normals[i, j])
                dwj = new_wj - weights[j]
                for s in range(n_states):
                    prop_rewards[s] = rewards[s] + dwj * features[s, j]
                    prop_values[s] = values[s]
                vi_sweeps(prop_rewards, next_state, discount, prop_values,
                          delta_stop, 100000)
                prop_ll = demo_loglik(prop_rewards, next_state, discount, prop_values,
                                      rationality, bias, actions)
            else:
                prop_b = reflect(bias + normals[i, j])
                prop_ll = demo_loglik(rewards, next_state, discount, values,
                                      rationality, prop_b, actions)
            d = temp * (prop_ll - cur_ll)
            if d >= 0.0 or uniforms[i * stride + j] < np.exp(d):
                accepted += 1
                cur_ll = prop_ll
                if j < n_feat:
                    weights[j] = new_wj
                    for s in range(n_states):
                        values[s] = prop_values[s]
                        rewards[s] = prop_rewards[s]
                else:
                    bias = prop_b
                if cur_ll > best_ll:
                    best_ll = cur_ll
                    best_b = bias
                    for k in range(n_feat):
                        best_w[k] = weights[k]
        if i == burn_in - 1:
            # restart the sampling phase from the best point seen, locally polished
            bll, bw, bb = coordinate_descent(features, next_state, discount, actions,
                                             rationality, best_w.copy(), best_b,
                                             sample_bias, delta_stop, 1)
            for k in range(n_feat):
                weights[k] = bw[k]
            bias = bb
            rewards = features @ weights
            for s in range(n_states):
                values[s] = 0.0
            vi_sweeps(rewards, next_state, discount, values, delta_stop, 100000)
            cur_ll = demo_loglik(rewards, next_state, discount, values, rationality,
                                 bias, actions)
        if i >= burn_in:
            for k in range(n_feat):
                samples_out[kept, k] = weights[k]
            biases_out[kept] = bias
            kept += 1
    return accepted / proposed
