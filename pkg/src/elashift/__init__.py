"""Fitness-landscape feature robustness under random Gaussian embeddings.

Subpackages and modules:

- ``suite``  -- 24 noiseless BBOB-style benchmark functions, seeded instances
- ``doe``    -- Latin-hypercube sampling designs
- ``embed``  -- random Gaussian embeddings and projection
- ``ela``    -- the 61 landscape features (8 sets)
- ``shift``  -- normalized feature-shift metric and aggregation
- ``runner`` -- experiment planning, parallel execution, resumable CSVs
- ``report`` -- heatmap / violin tables with CSV + SVG emission
"""

__version__ = "0.1.0"
