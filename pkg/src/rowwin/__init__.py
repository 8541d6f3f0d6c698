"""Row-window SpMM toolkit.

Partitions a sparse matrix into fixed-height row windows, picks a scalar or
tiled execution path per window (learned selector or analytic cost model),
runs the hybrid product, and optionally regroups graph vertices so more
windows become tile-friendly.  A small GNN layer on top demonstrates fused
aggregation/update with memory-traffic accounting.
"""

__version__ = "0.1.0"
