"""Linear models, solver backends and the fort neighborhood / infection formulations."""
