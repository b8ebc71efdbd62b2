"""netreason: gate-level netlist functional reasoning toolkit."""

__version__ = "0.1.0"
