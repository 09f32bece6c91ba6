# Commands module for the revgen command-line tool
