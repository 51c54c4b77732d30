"""Matrix document parsing and loading."""
