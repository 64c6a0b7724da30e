"""Publication-style figures from simulator run artifacts.

Consumes only the frozen CSV files a run leaves behind (metrics.csv,
events.csv, summary.csv); never recomputes simulation quantities and
never imports the simulator.
"""

__version__ = "0.1.0"
