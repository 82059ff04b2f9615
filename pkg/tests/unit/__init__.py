"""Unit tests for the SmartTodo application."""
