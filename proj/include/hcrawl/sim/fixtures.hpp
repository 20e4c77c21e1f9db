#pragma once

#include "hcrawl/sim/webgraph.hpp"

namespace hcrawl::sim::fixtures {

/// Six nodes u, a, b, c, d, v with edges u->a, u->c, a->b, b->d, c->d, d->v.
/// With ht = 0.4 and m = 2, ⟨u, a, b, d, v⟩ is promising but single-visit
/// exploration reaches d first through c, whose window ⟨c, d⟩ averages 0.35,
/// so v is never enqueued. The revisit variant re-offers d from b.
Webgraph single_visit_counterexample();

/// Nodes x and y linking each other, both with r = 0.6. Enter at x with a
/// seed window ⟨0.3⟩ and m = 5 to watch windows improve on every lap.
Webgraph two_cycle();

/// Seven nodes on which revisit exploration misses w although ⟨u, q, x, v, w⟩
/// is promising (ht = 0.4, m = 2): v is first offered from y with a better
/// parent window than x's but a worse window of its own, and M(v) then blocks
/// the offer from x.
Webgraph revisit_counterexample();

}  // namespace hcrawl::sim::fixtures
