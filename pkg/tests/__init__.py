# Tests for the revgen toolkit
