"""Power domination solvers: set-cover row generation, method dispatch, reports."""
