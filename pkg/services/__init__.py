# Services module for reversible gate classification and synthesis
